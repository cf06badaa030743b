"""Reference simulator for tests, written on bit-strings.

Deliberately naive: registers are Python strings, Hadamards are expanded term
by term, and nothing is shared with the package's engine or kernels.
"""

import itertools
import math


def xor_str(a, b):
    return "".join("1" if x != y else "0" for x, y in zip(a, b))


def dot_str(a, b):
    return sum(int(x) * int(y) for x, y in zip(a, b)) % 2


def perp(s):
    n = len(s)
    return ["".join(bits) for bits in itertools.product("01", repeat=n) if dot_str(s, "".join(bits)) == 0]


def bits(v, width):
    return format(v, f"0{width}b") if width else ""


class StringState:
    """Amplitudes keyed by full register strings; segments are (name, width)."""

    def __init__(self, segments):
        self.segments = list(segments)
        self.width = sum(w for _, w in segments)
        self.amps = {"0" * self.width: 1.0}

    def span(self, name):
        pos = 0
        for seg, w in self.segments:
            if seg == name:
                return pos, pos + w
            pos += w
        raise KeyError(name)

    def get(self, key, name):
        a, b = self.span(name)
        return key[a:b]

    def put(self, key, name, value):
        a, b = self.span(name)
        return key[:a] + value + key[b:]

    def hadamard(self, names):
        positions = [i for name in names for i in range(*self.span(name))]
        out = {}
        k = len(positions)
        for key, amp in self.amps.items():
            for pattern in itertools.product("01", repeat=k):
                sign = 1
                new = list(key)
                for pos, bit in zip(positions, pattern):
                    if key[pos] == "1" and bit == "1":
                        sign = -sign
                    new[pos] = bit
                new = "".join(new)
                out[new] = out.get(new, 0.0) + sign * amp / math.sqrt(2 ** k)
        self.amps = {key: a for key, a in out.items() if abs(a) > 1e-12}

    def basis_map(self, fn):
        self.amps = {fn(key): a for key, a in self.amps.items()}

    def marginal(self, names):
        out = {}
        for key, amp in self.amps.items():
            z = "".join(self.get(key, name) for name in names)
            out[z] = out.get(z, 0.0) + abs(amp) ** 2
        return out


def improved_reference(table, n, m, t):
    """Final state of the improved circuit; ``table`` maps n-bit strings to m-bit strings."""
    k = 2 ** t
    segs = [("control", n - t), ("index", t)] + [(f"value{w}", m) for w in range(k)] + [("target", m)]
    st = StringState(segs)
    st.hadamard(["control", "index"])

    def oracle(w):
        def fn(key):
            u = st.get(key, "control")
            return st.put(key, f"value{w}", xor_str(st.get(key, f"value{w}"), table[u + bits(w, t)]))
        return fn

    for w in range(k):
        st.basis_map(oracle(w))

    def v(key):
        i = int(st.get(key, "index"), 2)
        return st.put(key, "target", xor_str(st.get(key, "target"), st.get(key, f"value{i}")))

    st.basis_map(v)
    for w in reversed(range(k)):
        st.basis_map(oracle(w))
    st.hadamard(["control", "index"])
    return st


def baseline_reference(table, n, m, t):
    k = 2 ** t
    segs = [("control", n - t)] + [(f"value{w}", m) for w in range(k)] + [("sort_target", k * m)]
    st = StringState(segs)
    st.hadamard(["control"])

    def oracle(w):
        def fn(key):
            u = st.get(key, "control")
            return st.put(key, f"value{w}", xor_str(st.get(key, f"value{w}"), table[u + bits(w, t)]))
        return fn

    for w in range(k):
        st.basis_map(oracle(w))

    def usort(key):
        word = "".join(sorted(st.get(key, f"value{w}") for w in range(k)))
        return st.put(key, "sort_target", xor_str(st.get(key, "sort_target"), word))

    st.basis_map(usort)
    for w in reversed(range(k)):
        st.basis_map(oracle(w))
    st.hadamard(["control"])
    return st


def classic_reference(table, n, m):
    st = StringState([("control", n), ("target", m)])
    st.hadamard(["control"])
    st.basis_map(lambda key: st.put(key, "target", xor_str(st.get(key, "target"), table[st.get(key, "control")])))
    st.hadamard(["control"])
    return st


def table_strings(f):
    """Map n-bit input strings to m-bit output strings."""
    return {bits(x, f.n): bits(int(y), f.m) for x, y in enumerate(f.table)}


def brute_promise(f):
    """All-pairs check of f(x) == f(y) <=> x ^ y in {0, s}."""
    s = f.s.value
    for x in range(1 << f.n):
        for y in range(1 << f.n):
            same = f.table[x] == f.table[y]
            if same != ((x ^ y) in (0, s)):
                return False
    return True
