#!/usr/bin/env python3
"""Independent reference for the object language.

A second, deliberately naive implementation (plain Python ints, recursive
interpreter, separate parser) used to derive the constants frozen in
tests/frozen.hpp. `--check FILE` recomputes every value and compares it with
the header; `--print` emits the values.
"""

import argparse
import math
import re
import sys
from pathlib import Path

sys.setrecursionlimit(100000)
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def pair(x, y):
    return (x + y) * (x + y + 1) // 2 + y


def unpair(n):
    w = (math.isqrt(8 * n + 1) - 1) // 2
    y = n - w * (w + 1) // 2
    return w - y, y


def cons(h, t):
    return pair(h, t) + 1


def uncons(n):
    return unpair(n - 1)


def encode_list(items):
    code = 0
    for item in reversed(items):
        code = cons(item, code)
    return code


def decode_list(n):
    out = []
    while n:
        h, n = uncons(n)
        out.append(h)
    return out


# Statements are tuples: (op, fields...). Tags follow the fixed table.
TAGS = {"const": 0, "copy": 1, "succ": 2, "pred": 3, "pair": 4, "first": 5, "second": 6,
        "while": 7, "if": 8, "eval": 9, "smn": 10, "beval": 11, "query": 12}


def encode_stmt(s):
    op = s[0]
    if op == "nop":
        return s[1]
    if op in ("const", "copy", "succ", "pred", "first", "second", "query"):
        payload = pair(s[1], s[2])
    elif op in ("pair", "eval", "smn"):
        payload = pair(s[1], pair(s[2], s[3]))
    elif op == "beval":
        payload = pair(s[1], pair(s[2], pair(s[3], s[4])))
    elif op == "while":
        payload = pair(s[1], encode_block(s[2]))
    elif op == "if":
        payload = pair(s[1], pair(encode_block(s[2]), encode_block(s[3])))
    return pair(TAGS[op], payload)


def encode_block(b):
    return encode_list([encode_stmt(s) for s in b])


def decode_stmt(code):
    tag, p = unpair(code)
    if tag in (0, 1, 2, 3, 5, 6, 12):
        d, a = unpair(p)
        name = [k for k, v in TAGS.items() if v == tag][0]
        return (name, d, a)
    if tag in (4, 9, 10):
        d, r = unpair(p)
        a, b = unpair(r)
        return ({4: "pair", 9: "eval", 10: "smn"}[tag], d, a, b)
    if tag == 11:
        d, r = unpair(p)
        c, r = unpair(r)
        a, b = unpair(r)
        return ("beval", d, c, a, b)
    if tag == 7:
        g, body = unpair(p)
        return ("while", g, decode_block(body))
    if tag == 8:
        g, r = unpair(p)
        t, e = unpair(r)
        return ("if", g, decode_block(t), decode_block(e))
    return ("nop", code)


def decode_block(code):
    return [decode_stmt(c) for c in decode_list(code)]


def parse(text):
    stack = [[]]
    opened = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "}":
            s = opened.pop()
            stack.pop()
            stack[-1].append(s)
            continue
        if line == "} else {":
            stack.pop()
            s = opened[-1]
            stack.append(s[3])
            continue
        m = re.fullmatch(r"while X(\d+) \{", line)
        if m:
            s = ("while", int(m[1]), [])
            opened.append(s)
            stack.append(s[2])
            continue
        m = re.fullmatch(r"if X(\d+) == 0 \{", line)
        if m:
            s = ("if", int(m[1]), [], [])
            opened.append(s)
            stack.append(s[2])
            continue
        m = re.fullmatch(r"X(\d+) := (.*)", line)
        d, rhs = int(m[1]), m[2]
        words = rhs.split()
        if re.fullmatch(r"\d+", rhs):
            stack[-1].append(("const", d, int(rhs)))
        elif re.fullmatch(r"X\d+", rhs):
            stack[-1].append(("copy", d, int(rhs[1:])))
        elif len(words) == 2:
            stack[-1].append((words[0], d, int(words[1][1:])))
        elif len(words) == 3:
            stack[-1].append((words[0], d, int(words[1][1:]), int(words[2][1:])))
        elif len(words) == 4:
            stack[-1].append(("beval", d, int(words[1][1:]), int(words[2][1:]), int(words[3][1:])))
        elif rhs.startswith("<"):
            stack[-1].append(("const", d, parse_pair_literal(rhs)))
        else:
            raise ValueError(line)
    return stack[0]


def parse_pair_literal(text):
    toks = re.findall(r"<|>|,|\d+", text)
    pos = 0

    def value():
        nonlocal pos
        t = toks[pos]
        pos += 1
        if t == "<":
            a = value()
            pos += 1  # ,
            b = value()
            pos += 1  # >
            return pair(a, b)
        return int(t)

    return value()


class OutOfFuel(Exception):
    def __init__(self, deadline):
        self.deadline = deadline


class Machine:
    def __init__(self, budget):
        self.used = 0
        self.budget = budget

    def charge(self, deadline):
        if self.used >= deadline:
            raise OutOfFuel(deadline)
        self.used += 1

    def run(self, code, x, deadline):
        regs = {0: x}
        self.block(decode_block(code), regs, deadline)
        return regs.get(0, 0)

    def block(self, b, regs, deadline):
        for s in b:
            self.stmt(s, regs, deadline)

    def stmt(self, s, r, deadline):
        op = s[0]
        g = lambda k: r.get(k, 0)
        if op == "while":
            while True:
                self.charge(deadline)
                if g(s[1]) == 0:
                    return
                self.block(s[2], r, deadline)
        self.charge(deadline)
        if op == "nop":
            return
        if op == "const":
            r[s[1]] = s[2]
        elif op == "copy":
            r[s[1]] = g(s[2])
        elif op == "succ":
            r[s[1]] = g(s[2]) + 1
        elif op == "pred":
            r[s[1]] = max(g(s[2]) - 1, 0)
        elif op == "first":
            r[s[1]] = unpair(g(s[2]))[0]
        elif op == "second":
            r[s[1]] = unpair(g(s[2]))[1]
        elif op == "pair":
            r[s[1]] = pair(g(s[2]), g(s[3]))
        elif op == "smn":
            r[s[1]] = smn(g(s[2]), g(s[3]))
        elif op == "if":
            self.block(s[2] if g(s[1]) == 0 else s[3], r, deadline)
        elif op == "eval":
            r[s[1]] = self.run(g(s[2]), g(s[3]), deadline)
        elif op == "beval":
            own = self.used + g(s[4])
            try:
                r[s[1]] = pair(1, self.run(g(s[2]), g(s[3]), min(own, deadline)))
            except OutOfFuel as e:
                if e.deadline != own or own > deadline:
                    raise
                r[s[1]] = 0
        elif op == "query":
            self.used = deadline
            raise OutOfFuel(deadline)


def run(code, x, budget):
    m = Machine(budget)
    try:
        v = m.run(code, x, budget)
        return ("HALT", v, m.used)
    except OutOfFuel:
        return ("EXHAUSTED", budget)


def smn(p, x):
    return encode_block([("const", 1, x), ("pair", 2, 1, 0), ("const", 3, p), ("eval", 0, 3, 2)])


U = encode_block([("first", 1, 0), ("second", 2, 0), ("eval", 0, 1, 2)])


def compose(i, j):
    return encode_block([("const", 2, j), ("eval", 1, 2, 0), ("const", 3, i), ("eval", 0, 3, 1)])


def graph_code(entries):
    return encode_list([pair(a, v) for a, v in sorted(entries.items())])


def derive(corpus_dir):
    names = ["div", "succ", "constant-zero", "factorial", "add", "mul", "parity-transformer"]
    corpus = {n: encode_block(parse((Path(corpus_dir) / f"{n}.wl").read_text())) for n in names}
    fact = corpus["factorial"]
    v = {}
    v["kPair12"] = pair(1, 2)
    v["kDivIndex"] = corpus["div"]
    v["kSuccIndex"] = corpus["succ"]
    v["kConstantZeroIndex"] = corpus["constant-zero"]
    v["kUniversalIndex"] = U
    v["kFactorialBits"] = fact.bit_length()
    v["kFactorialLow64"] = fact & ((1 << 64) - 1)
    v["kAddLow64"] = corpus["add"] & ((1 << 64) - 1)
    v["kParityLow64"] = corpus["parity-transformer"] & ((1 << 64) - 1)
    for n in range(7):
        v[f"kFactorialSteps{n}"] = run(fact, n, 10**6)[2]
    v["kUniversalFactorial4Steps"] = run(U, pair(fact, 4), 10**6)[2]
    v["kAddSpecSteps"] = run(smn(corpus["add"], 3), 4, 10**6)[2]
    v["kComposeSuccSuccSteps"] = run(compose(corpus["succ"], corpus["succ"]), 5, 10**6)[2]
    v["kMul67Steps"] = run(corpus["mul"], pair(6, 7), 10**6)[2]
    v["kGraph3to6"] = graph_code({3: 6})
    v["kGraph2to5"] = graph_code({2: 5})
    v["kSmnIdentityZero"] = smn(0, 0)
    # beval result only depends on (code, arg, budget): probe DIV and succ.
    probe = encode_block([("const", 1, corpus["succ"]), ("const", 2, 5), ("beval", 0, 1, 0, 2)])
    v["kBevalProbeSteps"] = run(probe, 4, 10**6)[2]
    v["kBevalProbeValue"] = run(probe, 4, 10**6)[1]
    return v


def parse_header(path):
    vals = {}
    text = Path(path).read_text()
    for m in re.finditer(r"inline constexpr std::uint64_t (k\w+) = (\d+)(?:ULL)?;", text):
        vals[m[1]] = int(m[2])
    for m in re.finditer(r'inline constexpr std::string_view (k\w+) = "(\d+)";', text):
        vals[m[1]] = int(m[2])
    return vals


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--corpus", default=str(Path(__file__).resolve().parents[2] / "corpus"))
    ap.add_argument("--check", metavar="HEADER")
    ap.add_argument("--print", action="store_true")
    args = ap.parse_args()
    values = derive(args.corpus)
    if args.print:
        for k, val in values.items():
            if val < 2**64:
                print(f"inline constexpr std::uint64_t {k} = {val}ULL;")
            else:
                print(f'inline constexpr std::string_view {k} = "{val}";')
    if args.check:
        frozen = parse_header(args.check)
        bad = 0
        for k, val in values.items():
            ok = frozen.get(k) == val
            bad += not ok
            print(("OK   " if ok else "FAIL ") + f"{k} reference={val} frozen={frozen.get(k)}")
        sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
