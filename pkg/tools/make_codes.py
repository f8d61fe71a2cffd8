#!/usr/bin/env python3
"""Generate catalog/codes.json: one self-dual binary code per target weight
distribution.

Structured constructions cover most targets (window codes with glue words,
direct sums, a shortened extended Golay code); the remaining distributions
are found by a seeded hill-climbing walk over the self-dual neighbor graph.
Every generated code is re-validated from scratch before the JSON is written.

Run from the repository root:  python3 tools/make_codes.py
"""

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from latsec.codes import BinaryCode, dual_code, is_self_dual, min_distance  # noqa: E402

# ----------------------------------------------------------------- targets --
# full weight distributions (index = weight); "num" = how many inequivalent
# codes share the distribution (we ship one representative)

def _expand(n, even_weights):
    full = [0] * (n + 1)
    for i, w in enumerate(even_weights):
        full[2 * i] = w
    return tuple(full)


TARGETS = [
    ("[8,4,4]", 8, _expand(8, (1, 0, 14, 0, 1)), 1),
    ("[12,6,4]", 12, _expand(12, (1, 0, 15, 32, 15, 0, 1)), 1),
    ("[14,7,4]", 14, _expand(14, (1, 0, 14, 49, 49, 14, 0, 1)), 1),
    ("[16,8,4]", 16, _expand(16, (1, 0, 12, 64, 102, 64, 12, 0, 1)), 1),
    ("[18,9,4]-W4-9", 18, _expand(18, (1, 0, 9, 75, 171, 171, 75, 9, 0, 1)), 1),
    ("[18,9,4]-W4-17", 18, _expand(18, (1, 0, 17, 51, 187, 187, 51, 17, 0, 1)), 1),
    ("[20,10,4]-W4-5", 20, _expand(20, (1, 0, 5, 80, 250, 352, 250, 80, 5, 0, 1)), 1),
    ("[20,10,4]-W4-9", 20, _expand(20, (1, 0, 9, 72, 246, 368, 246, 72, 9, 0, 1)), 1),
    ("[20,10,4]-W4-13", 20, _expand(20, (1, 0, 13, 64, 242, 384, 242, 64, 13, 0, 1)), 1),
    ("[20,10,4]-W4-17", 20, _expand(20, (1, 0, 17, 56, 238, 400, 238, 56, 17, 0, 1)), 1),
    ("[20,10,4]-W4-21", 20, _expand(20, (1, 0, 21, 48, 234, 416, 234, 48, 21, 0, 1)), 1),
    ("[20,10,4]-W4-29", 20, _expand(20, (1, 0, 29, 32, 226, 448, 226, 32, 29, 0, 1)), 1),
    ("[20,10,4]-W4-45", 20, _expand(20, (1, 0, 45, 0, 210, 512, 210, 0, 45, 0, 1)), 1),
    ("[22,11,6]", 22, _expand(22, (1, 0, 0, 77, 330, 616, 616, 330, 77, 0, 0, 1)), 1),
    ("[22,11,4]-W4-4", 22, _expand(22, (1, 0, 4, 73, 318, 628, 628, 318, 73, 4, 0, 1)), 1),
    ("[22,11,4]-W4-8", 22, _expand(22, (1, 0, 8, 69, 306, 640, 640, 306, 69, 8, 0, 1)), 1),
    ("[22,11,4]-W4-12", 22, _expand(22, (1, 0, 12, 65, 294, 652, 652, 294, 65, 12, 0, 1)), 1),
    ("[22,11,4]-W4-16", 22, _expand(22, (1, 0, 16, 61, 282, 664, 664, 282, 61, 16, 0, 1)), 2),
    ("[22,11,4]-W4-20", 22, _expand(22, (1, 0, 20, 57, 270, 676, 676, 270, 57, 20, 0, 1)), 1),
    ("[22,11,4]-W4-28", 22, _expand(22, (1, 0, 28, 49, 246, 700, 700, 246, 49, 28, 0, 1)), 2),
]

TARGET_BY_NAME = {t[0]: t for t in TARGETS}


# ----------------------------------------------------- component codebook --

def window_code(m):
    """d_{2m}: the [2m, m-1] span of 1111 shifted in steps of two."""
    return [0b1111 << (2 * i) for i in range(m - 1)], 2 * m


def hamming7():
    # parity-check columns = 1..7 in binary; codewords = null space
    words = []
    for v in range(128):
        s = 0
        for j in range(7):
            if v >> j & 1:
                s ^= j + 1
        if s == 0:
            words.append(v)
    gens = []
    span = {0}
    for w in words:
        if w not in span:
            gens.append(w)
            span |= {w ^ s for s in span}
    return gens, 7


def e7_code():
    gens, _ = hamming7()
    code = BinaryCode(gens, 7)
    even = [w for w in code.codewords() if bin(w).count("1") % 2 == 0]
    gens = []
    span = {0}
    for w in even:
        if w not in span:
            gens.append(w)
            span |= {w ^ s for s in span}
    return gens, 7


def e8_code():
    gens, _ = e7_code()
    # extend every Hamming word by an overall parity bit
    h, _ = hamming7()
    out = []
    for g in h:
        p = bin(g).count("1") % 2
        out.append(g | p << 7)
    return out, 8


def shift(rows, offset):
    return [r << offset for r in rows]


def span_words(gens):
    words = [0]
    for g in gens:
        words += [w ^ g for w in words]
    return words


def weight_distribution(gens, n):
    dist = [0] * (n + 1)
    for w in span_words(gens):
        dist[bin(w).count("1")] += 1
    return tuple(dist)


# ------------------------------------------------------------- glue search --

class Disc:
    """Coset structure of C^perp / C for one component."""

    def __init__(self, gens, n):
        self.n = n
        code = BinaryCode(gens, n)
        words = set(code.codewords())
        dual = dual_code(code)
        reps = []
        seen = set()
        for w in sorted(dual.codewords(), key=lambda x: (bin(x).count("1"), x)):
            if w in seen:
                continue
            reps.append(w)
            seen |= {w ^ c for c in words}
        self.reps = reps  # reps[0] = 0, each of minimal weight in its coset
        self.index = {w ^ c: i for i, w in enumerate(reps) for c in words}
        self.minwt = [bin(r).count("1") for r in reps]
        self.parity = [w % 2 for w in self.minwt]
        k = len(reps)
        self.add = [[self.index[reps[i] ^ reps[j]] for j in range(k)] for i in range(k)]
        self.dot = [
            [bin(reps[i] & reps[j]).count("1") % 2 for j in range(k)] for i in range(k)
        ]


def glue_search(components, glue_dim, n, target, limit=2_000_000):
    """DFS for an isotropic glue group matching the target distribution.

    components: list of (gens, length). Glue elements are tuples of coset
    indices; a valid glue group has 2**glue_dim elements, even-weight words
    orthogonal to each other, minimum coset weight >= 4, and the assembled
    code must reproduce the target weight distribution exactly.
    """
    discs = []
    offsets = []
    off = 0
    base_rows = []
    for gens, length in components:
        discs.append(Disc(gens, length))
        offsets.append(off)
        base_rows.extend(shift(gens, off))
        off += length
    assert off == n

    elements = [()]
    for d in discs:
        elements = [e + (i,) for e in elements for i in range(len(d.reps))]

    def total_parity(e):
        return sum(d.parity[i] for d, i in zip(discs, e)) % 2

    def total_minwt(e):
        return sum(d.minwt[i] for d, i in zip(discs, e))

    def dot(e, f):
        return sum(d.dot[i][j] for d, i, j in zip(discs, e, f)) % 2

    def add(e, f):
        return tuple(d.add[i][j] for d, i, j in zip(discs, e, f))

    # a glue class of minimal weight w contributes a word of weight w, so no
    # class may fall below the first weight the components leave unfilled
    base_dist = weight_distribution(base_rows, n)
    min_glue = next(
        w for w in range(2, n + 1, 2) if target[w] > base_dist[w]
    )

    zero = tuple(0 for _ in discs)
    cand = [
        e
        for e in elements
        if e != zero and total_parity(e) == 0 and total_minwt(e) >= min_glue
    ]
    cand.sort(key=total_minwt, reverse=True)
    nodes = 0

    def lift(e):
        return sum(discs[i].reps[e[i]] << offsets[i] for i in range(len(discs)))

    def dfs(start, gens_chosen, group):
        nonlocal nodes
        if len(group) == 1 << glue_dim:
            rows = base_rows + [lift(g) for g in gens_chosen]
            if weight_distribution(rows, n) == target:
                return rows
            return None
        for i in range(start, len(cand)):
            nodes += 1
            if nodes > limit:
                return None
            g = cand[i]
            if g in group:
                continue
            if any(dot(g, s) for s in gens_chosen):
                continue
            new = [add(g, h) for h in group]
            if any(x != zero and total_minwt(x) < min_glue for x in new):
                continue
            result = dfs(i + 1, gens_chosen + [g], group | set(new))
            if result is not None:
                return result
        return None

    return dfs(0, [], {zero})


# ------------------------------------------------------------ Golay family --

def golay24():
    """Extended Golay [24,12,8] as a bordered quadratic-residue circulant.

    The bordered matrix admits a handful of sign conventions (residues vs
    non-residues, diagonal, corner); try them all and keep the one whose
    span has the Golay weight enumerator.
    """
    qr = {pow(x, 2, 11) for x in range(1, 11)}
    for use_qr in (True, False):
        for diag in (0, 1):
            for corner in (0, 1):
                rows = []
                for i in range(12):
                    mask = 1 << i
                    for j in range(12):
                        if i == 0 and j == 0:
                            bit = corner
                        elif i == 0 or j == 0:
                            bit = 1
                        elif i == j:
                            bit = diag
                        else:
                            bit = int(((i - j) % 11 in qr) == use_qr)
                        mask |= bit << (12 + j)
                    rows.append(mask)
                dist = weight_distribution(rows, 24)
                if dist[8] == 759 and dist[12] == 2576 and dist[4] == 0:
                    return rows, 24
    raise RuntimeError("no bordered-circulant variant gave the Golay enumerator")


def shorten_equal_pair(rows, n, p, q):
    """Words with bit p == bit q, both coordinates deleted."""
    code = BinaryCode(rows, n)
    kept = []
    for w in code.codewords():
        if (w >> p & 1) == (w >> q & 1):
            kept.append(w)
    out = []
    for w in kept:
        v = 0
        j = 0
        for i in range(n):
            if i in (p, q):
                continue
            v |= (w >> i & 1) << j
            j += 1
        out.append(v)
    gens = []
    span = {0}
    for w in out:
        if w not in span:
            gens.append(w)
            span |= {w ^ s for s in span}
    return gens, n - 2


# ------------------------------------------------------------ neighbor walk --

def neighbor(gens, x):
    """Self-dual neighbor <C cap x-perp, x> for even-weight x outside C."""
    pivot = None
    new = []
    for g in gens:
        if bin(g & x).count("1") % 2:
            if pivot is None:
                pivot = g
                continue
            g ^= pivot
        new.append(g)
    if pivot is None:
        return None  # x in C-perp = C: no move
    new.append(x)
    return new


def walk_to_target(name, n, target, seed_rows, rng, max_steps=250_000):
    gens = list(seed_rows)

    def score(dist):
        s = sum(abs(a - b) for a, b in zip(dist, target))
        if dist[2]:
            s += 10_000 * dist[2]
        return s

    current = score(weight_distribution(gens, n))
    best = current
    for step in range(max_steps):
        if current == 0:
            return gens
        w = rng.choice((4, 6, 6, 8, 8, 10))
        x = 0
        for pos in rng.sample(range(n), w):
            x |= 1 << pos
        cand = neighbor(gens, x)
        if cand is None:
            continue
        s = score(weight_distribution(cand, n))
        if s <= current or rng.random() < 0.02:
            gens, current = cand, s
            best = min(best, s)
        if step % 20_000 == 19_999:  # restart from the seed, fresh randomness
            gens = list(seed_rows)
            current = score(weight_distribution(gens, n))
    raise RuntimeError(f"walk for {name} failed (best score {best})")


# --------------------------------------------------------------- assembly --

def build_all():
    found = {}

    def accept(name, rows):
        _, n, target, _num = TARGET_BY_NAME[name]
        dist = weight_distribution(rows, n)
        if dist != target:
            raise RuntimeError(f"{name}: distribution {dist} != target")
        code = BinaryCode(rows, n, name=name)
        if not is_self_dual(code):
            raise RuntimeError(f"{name}: not self-dual")
        found[name] = code
        print(f"  {name}: ok (d={min_distance(code)})")

    print("structured constructions:")
    e8, _ = e8_code()
    accept("[8,4,4]", e8)

    d12, _ = window_code(6)
    accept("[12,6,4]", d12 + [0b101010101010])

    e7, _ = e7_code()
    accept("[14,7,4]", shift(e7, 0) + shift(e7, 7) + [(1 << 14) - 1])

    d8, _ = window_code(4)
    rows = glue_search([(d8, 8), (d8, 8)], 2, 16, TARGET_BY_NAME["[16,8,4]"][2])
    accept("[16,8,4]", rows)

    d6, _ = window_code(3)
    rows = glue_search([(d6, 6)] * 3, 3, 18, TARGET_BY_NAME["[18,9,4]-W4-9"][2])
    accept("[18,9,4]-W4-9", rows)

    d4, _ = window_code(2)
    rows = glue_search([(d4, 4)] * 5, 5, 20, TARGET_BY_NAME["[20,10,4]-W4-5"][2])
    accept("[20,10,4]-W4-5", rows)

    rows = glue_search([(e7, 7), (e7, 7), (d6, 6)], 2, 20,
                       TARGET_BY_NAME["[20,10,4]-W4-17"][2])
    accept("[20,10,4]-W4-17", rows)

    rows = glue_search([(d8, 8), (d8, 8), (d4, 4)], 3, 20,
                       TARGET_BY_NAME["[20,10,4]-W4-13"][2])
    accept("[20,10,4]-W4-13", rows)

    rows = glue_search([(d8, 8), (d6, 6), (d6, 6)], 3, 20,
                       TARGET_BY_NAME["[20,10,4]-W4-21"][2])
    accept("[20,10,4]-W4-21", rows)

    d20, _ = window_code(10)
    accept("[20,10,4]-W4-45", d20 + [sum(1 << (2 * i) for i in range(10))])

    c12 = found["[12,6,4]"]
    accept("[20,10,4]-W4-29", shift(e8, 0) + shift(list(c12.rows), 8))

    g24, _ = golay24()
    rows, n22 = shorten_equal_pair(g24, 24, 22, 23)
    assert n22 == 22
    accept("[22,11,6]", rows)

    print("neighbor walks:")
    walks = [
        ("[18,9,4]-W4-17", "[18,9,4]-W4-9", 101),
        ("[20,10,4]-W4-9", "[20,10,4]-W4-5", 202),
        ("[22,11,4]-W4-4", "[22,11,6]", 303),
        ("[22,11,4]-W4-8", "[22,11,6]", 404),
        ("[22,11,4]-W4-12", "[22,11,6]", 505),
        ("[22,11,4]-W4-16", "[22,11,6]", 606),
        ("[22,11,4]-W4-20", "[22,11,6]", 707),
        ("[22,11,4]-W4-28", "[22,11,6]", 808),
    ]
    for name, seed_name, seed in walks:
        _, n, target, _ = TARGET_BY_NAME[name]
        rows = walk_to_target(name, n, target,
                              list(found[seed_name].rows), random.Random(seed))
        accept(name, rows)

    return found


def main():
    found = build_all()
    missing = [t[0] for t in TARGETS if t[0] not in found]
    if missing:
        raise SystemExit(f"missing codes: {missing}")

    entries = []
    for name, n, target, num in TARGETS:
        code = found[name]
        entry = {
            "name": name,
            "n": n,
            "k": code.k,
            "d": min_distance(code),
            "num": num,
            "generator_rows": code.bitstrings(),
            "expected_weights": list(target),
        }
        entries.append(entry)

    root = Path(__file__).resolve().parent.parent
    text = json.dumps(entries, indent=1)
    for out in (root / "catalog" / "codes.json", root / "src" / "latsec" / "data" / "codes.json"):
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n")
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
