# Copyright 2026 The docmark Authors
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

"""Reference values frozen into tests/oracle_vectors.hpp.

Written against hashlib, numpy and scipy only, without looking at the C++
implementation's intermediate state.
"""

import hashlib

import numpy as np
from scipy.fft import dctn

M64 = (1 << 64) - 1


def splitmix(seed):
    s = seed
    while True:
        s = (s + 0x9E3779B97F4A7C15) & M64
        z = s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
        yield z ^ (z >> 31)


def below(gen, bound):
    threshold = ((1 << 64) - bound) % bound
    while True:
        r = next(gen)
        if r >= threshold:
            return r % bound


def permutation(count, seed):
    p = list(range(count))
    g = splitmix(seed)
    for i in range(count - 1, 0, -1):
        j = below(g, i + 1)
        p[i], p[j] = p[j], p[i]
    return p


def context_bits(author, title, context):
    seed = hashlib.sha256("\x1f".join([author, title, context]).encode()).digest()
    bits = []
    counter = 0
    while len(bits) < 4096:
        block = hashlib.sha256(seed + counter.to_bytes(4, "big")).digest()
        for byte in block:
            bits.extend((byte >> (7 - k)) & 1 for k in range(8))
        counter += 1
    return np.array(bits[:4096], dtype=np.uint8)


def digest(bits):
    return hashlib.sha256(np.packbits(bits).tobytes()).hexdigest()


def arnold_once(a):
    n = a.shape[0]
    out = np.zeros_like(a)
    for x in range(n):
        for y in range(n):
            out[(x + y) % n, (x + 2 * y) % n] = a[x, y]
    return out


def arnold_period(n):
    start = np.arange(n * n).reshape(n, n)
    cur = arnold_once(start)
    k = 1
    while not np.array_equal(cur, start):
        cur = arnold_once(cur)
        k += 1
    return k


def main():
    g = splitmix(0)
    print("splitmix(0):", [hex(next(g)) for _ in range(3)])
    print("perm(10, 42):", permutation(10, 42))
    print("perm(16, 0xDEADBEEF):", permutation(16, 0xDEADBEEF))

    bits = context_bits("alice", "Doc", "a cat")
    print("context bits[0:32]:", "".join(map(str, bits[:32])))
    print("context ones:", int(bits.sum()))
    print("context digest:", digest(bits))
    print("context-free digest:", digest(context_bits("alice", "Doc", "")))

    block = np.array([[(r * r * 7 + c * 13 + r * c * 5) % 256 for c in range(8)] for r in range(8)], dtype=float)
    d = dctn(block, norm="ortho")
    print("dct block [0,0] [0,1] [1,0] [0,4] [7,7]:",
          ["%.12f" % v for v in (d[0, 0], d[0, 1], d[1, 0], d[0, 4], d[7, 7])])

    for n in (5, 8, 64):
        print("arnold period", n, arnold_period(n))
    print("arnold_once 4x4 of arange%2:", arnold_once(np.arange(16).reshape(4, 4)).tolist())


if __name__ == "__main__":
    main()
