# Copyright 2026 The ThreatForge Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent mt19937_64 and rejection-sampling draw, used to pin the
dataset split sequence in the unit tests.

    python3 tests/oracles/split_oracle.py
"""

MASK = (1 << 64) - 1


class MT19937_64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & MASK
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK
        self.index = 312

    def __call__(self):
        if self.index >= 312:
            for k in range(312):
                x = (self.mt[k] & 0xFFFFFFFF80000000) | (self.mt[(k + 1) % 312] & 0x7FFFFFFF)
                xa = x >> 1
                if x & 1:
                    xa ^= 0xB5026F5AA96619E9
                self.mt[k] = self.mt[(k + 156) % 312] ^ xa
            self.index = 0
        y = self.mt[self.index]
        self.index += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK


def uniform_below(rng, n):
    limit = MASK - ((MASK % n + 1) % n)
    while True:
        x = rng()
        if x <= limit:
            return x % n


def split(n, seed):
    rng = MT19937_64(seed)
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = uniform_below(rng, i + 1)
        order[i], order[j] = order[j], order[i]
    n_train = min(n - 1, (4 * n + 4) // 5)
    return sorted(order[:n_train]), sorted(order[n_train:])


def main():
    check = MT19937_64(5489)
    for _ in range(9999):
        check()
    assert check() == 9981545732273789042

    rng = MT19937_64(0)
    print("uniform_below(seed 0, 10) x8:", [uniform_below(rng, 10) for _ in range(8)])
    for n, seed in [(10, 0), (50, 7)]:
        train, test = split(n, seed)
        print(f"split n={n} seed={seed} test indices:", test)


if __name__ == "__main__":
    main()
