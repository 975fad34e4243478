"""Builder for the figure-eight knot complement fixture.

The manifold is glued from two regular ideal tetrahedra
``T0 = (inf, 0, 1, zeta)`` and ``T1 = (inf, 0, 1, conj zeta)`` in the upper
half-space, with ``zeta = (1 + sqrt(-3)) / 2``.  The holonomy group is
generated by ``a = [[1, 1], [0, 1]]`` and ``b = [[1, 0], [-omega, 1]]``,
``omega = (-1 + sqrt(-3)) / 2``; the face pairings below are words in them.

The decorated relative cycle is the barycentric subdivision of the truncated
triangulation.  Each cell of the two tetrahedra gets a group label, chosen
equivariantly (a cell glued to ``W^-1`` times another cell gets ``W^-1`` times
its label).  Cells on the cusp torus at the ideal vertex ``v`` get labels
``h`` with ``h . inf = v``, so that the boundary flags become cones over
simplices of the cusp subgroup.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

from ..barhomology import GammaElem, free_reduce, invert_word
from ..exactnum import GroupElem, ProjPoint, QuadraticField, format_point

FIELD = QuadraticField(-3)
S = FIELD.gen
OMEGA = (FIELD(-1) + S) / 2
ZETA = (FIELD(1) + S) / 2

GENERATORS = {
    "a": GroupElem(1, 1, 0, 1, FIELD),
    "b": GroupElem(1, 0, -OMEGA, 1, FIELD),
}
RELATORS = ["aBAbaBabAB"]
LONGITUDE = "bABaaBAb"
CUSP_WORDS = ["a", LONGITUDE]
BASE_POINT = FIELD(Fraction(1, 7), Fraction(2, 11))

INF = ProjPoint.infinity(FIELD)
TETRAHEDRA = [
    (INF, ProjPoint(FIELD(0)), ProjPoint(FIELD(1)), ProjPoint(ZETA)),
    (INF, ProjPoint(FIELD(0)), ProjPoint(FIELD(1)), ProjPoint(ZETA.conjugate())),
]
# (tet, face opposite vertex) -> (tet, face, word W, images of the face's vertices)
# W maps the face of the first tetrahedron onto the face of the second.
FACE_PAIRINGS = {
    (0, 0): (1, 2, "B", (1, 3, 0)),
    (0, 1): (1, 0, "aBA", (3, 2, 1)),
    (0, 2): (1, 1, "aB", (3, 2, 0)),
    (0, 3): (1, 3, "", (0, 1, 2)),
}
# words h with h . inf = v for the ideal vertices
COSET_WORDS = {"inf": "", "zeta": "b", "zbar": "aB", "1": "baB", "0": "aBAb"}

TRUNCATION = Fraction(1, 4)
LABEL_SEED = 0
M_RANGE, N_RANGE = 4, 2


def gamma(word: str) -> GammaElem:
    return GammaElem.from_word(word, GENERATORS, FIELD)


def _point_name(p: ProjPoint) -> str:
    names = {INF: "inf", ProjPoint(ZETA): "zeta", ProjPoint(ZETA.conjugate()): "zbar",
             ProjPoint(FIELD(1)): "1", ProjPoint(FIELD(0)): "0"}
    return names[p]


def all_pairings() -> list[tuple]:
    """Pairings in both directions as (t, i, u, k, word, vertex map dict)."""
    out = []
    for (t, i), (u, k, word, images) in FACE_PAIRINGS.items():
        src = [j for j in range(4) if j != i]
        vmap = dict(zip(src, images))
        out.append((t, i, u, k, word, vmap))
        inv = {v: j for j, v in vmap.items()}
        out.append((u, k, t, i, invert_word(word), inv))
    return out


def check_pairings() -> None:
    """Each pairing word really maps the face onto the paired face, vertex by vertex."""
    for t, i, u, k, word, vmap in all_pairings():
        g = gamma(word)
        for j, m in vmap.items():
            assert g.apply(TETRAHEDRA[t][j]) == TETRAHEDRA[u][m], (t, i, word, j)


# ---------------------------------------------------------------------------
# cells of a truncated tetrahedron, named by vertex indices


def cells() -> list[tuple]:
    out = [("T",)]
    for i in range(4):
        out.append(("H", i))
        out.append(("L", i))
    for v in range(4):
        for w in range(4):
            if v != w:
                out.append(("P", w, v))  # end at v of the edge vw
                if v < w:
                    out.append(("A", v, w))
    for i in range(4):
        for v in range(4):
            if v != i:
                out.append(("l", i, v))  # hexagon i meets link triangle v
    return out


def cell_dim(c) -> int:
    return {"T": 3, "H": 2, "L": 2, "A": 1, "l": 1, "P": 0}[c[0]]


def cusp_vertex(c) -> int | None:
    """Model vertex whose link contains the cell, for boundary cells."""
    if c[0] == "L":
        return c[1]
    if c[0] in ("l", "P"):
        return c[2]
    return None


def contains(big, small) -> bool:
    kind, sk = big[0], small[0]
    if big == ("T",):
        return small != big
    if kind == "H":
        i = big[1]
        return (sk == "A" and i not in small[1:]) or (sk == "l" and small[1] == i) or (
            sk == "P" and i not in small[1:])
    if kind == "L":
        v = big[1]
        return (sk == "l" and small[2] == v) or (sk == "P" and small[2] == v)
    if kind == "A":
        return sk == "P" and set(small[1:]) == set(big[1:])
    if kind == "l":
        i, v = big[1], big[2]
        return sk == "P" and small[2] == v and small[1] != i
    return False


def model_point(c) -> tuple:
    """Barycenter of a cell in the Euclidean model with vertices 0, e1, e2, e3."""
    verts = [(Fraction(0),) * 3, (Fraction(1), 0, 0), (0, Fraction(1), 0), (0, 0, Fraction(1))]

    def p(w, v):  # end at v of edge vw
        return tuple(verts[v][k] + TRUNCATION * (verts[w][k] - verts[v][k]) for k in range(3))

    def avg(pts):
        pts = list(pts)
        return tuple(sum(q[k] for q in pts) / len(pts) for k in range(3))

    kind = c[0]
    if kind == "P":
        return p(c[1], c[2])
    if kind == "A":
        return avg([p(c[1], c[2]), p(c[2], c[1])])
    if kind == "l":
        i, v = c[1], c[2]
        return avg([p(w, v) for w in range(4) if w not in (i, v)])
    if kind == "L":
        return avg([p(w, c[1]) for w in range(4) if w != c[1]])
    if kind == "H":
        i = c[1]
        return avg([p(w, v) for v in range(4) for w in range(4) if i not in (v, w) and v != w])
    return avg([p(w, v) for v in range(4) for w in range(4) if v != w])


def _det3(u, v, w) -> Fraction:
    return (u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
            + u[2] * (v[0] * w[1] - v[1] * w[0]))


def flags() -> list[tuple]:
    cs = cells()
    out = []
    for x2 in (c for c in cs if cell_dim(c) == 2):
        for x1 in (c for c in cs if cell_dim(c) == 1 and contains(x2, c)):
            for x0 in (c for c in cs if cell_dim(c) == 0 and contains(x1, c)):
                out.append((("T",), x2, x1, x0))
    return out


def flag_sign(flag) -> int:
    b = [model_point(c) for c in flag]
    d = _det3(*[tuple(x[k] - b[0][k] for k in range(3)) for x in b[1:]])
    assert d != 0
    return 1 if d > 0 else -1


# ---------------------------------------------------------------------------
# equivariant labels


def _glued_cell(c, i: int, vmap: dict):
    """Image of a cell lying on face i under the vertex map of a pairing, or None."""
    kind = c[0]
    if kind == "H" and c[1] == i:
        return None  # handled separately (needs target face index)
    if kind in ("A", "P") and i not in c[1:]:
        return (kind,) + tuple(vmap[x] for x in c[1:]) if kind == "P" else (
            "A",) + tuple(sorted(vmap[x] for x in c[1:]))
    if kind == "l" and c[1] == i:
        return ("l", None, vmap[c[2]])
    return None


def label_cells(seed: int) -> dict:
    """Group labels for all cells of both tetrahedra (identity translates)."""
    nodes = [(t, c) for t in range(2) for c in cells()]
    parent = {n: (n, gamma("")) for n in nodes}

    def find(n):
        x = gamma("")
        while parent[n][0] != n:
            n, g = parent[n][0], parent[n][1]
            x = x @ g
        return n, x

    def union(n1, g, n2):
        """label(n1) = g label(n2)."""
        r1, x1 = find(n1)
        r2, x2 = find(n2)
        # label(n1) = x1 label(r1), label(n2) = x2 label(r2)
        if r1 == r2:
            assert x1 == g @ x2, ("inconsistent gluing", n1, n2)
            return
        # label(r1) = x1^-1 g x2 label(r2)
        parent[r1] = (r2, x1.inverse() @ g @ x2)

    for t, i, u, k, word, vmap in all_pairings():
        w_inv = gamma(word).inverse()
        for c in cells():
            if c[0] == "H" and c[1] == i:
                union((t, c), w_inv, (u, ("H", k)))
                continue
            img = _glued_cell(c, i, vmap)
            if img is None:
                continue
            if img[0] == "l":
                img = ("l", k, img[2])
            union((t, c), w_inv, (u, img))

    roots = sorted({find(n)[0] for n in nodes}, key=repr)
    root_labels = {}
    rng = random.Random(seed)
    n_boundary = sum(1 for r in roots if cusp_vertex(r[1]) is not None)
    interior_words = _interior_words(rng, len(roots) - n_boundary)
    cusp_factors = _cusp_factors(rng, n_boundary)
    n_int = n_cusp = 0
    for r in roots:
        t, c = r
        v = cusp_vertex(c)
        if v is None:
            root_labels[r] = gamma(interior_words[n_int])
            n_int += 1
        else:
            base = COSET_WORDS[_point_name(TETRAHEDRA[t][v])]
            root_labels[r] = gamma(base + cusp_factors[n_cusp])
            n_cusp += 1
    labels = {}
    for n in nodes:
        r, x = find(n)
        labels[n] = x @ root_labels[r]
        v = cusp_vertex(n[1])
        if v is not None:
            assert labels[n].apply(INF) == TETRAHEDRA[n[0]][v]
    return labels


def _power(word: str, n: int) -> str:
    return word * n if n >= 0 else invert_word(word) * -n


def _interior_words(rng: random.Random, count: int) -> list[str]:
    # alternating words in a and b of length >= 2, so none lies in the cusp subgroup
    out: list[str] = []
    while len(out) < count:
        w = "".join(rng.choice("aA") + rng.choice("bB") for _ in range(rng.randint(1, 2)))
        if w not in out:
            out.append(w)
    return out


def _cusp_factors(rng: random.Random, count: int) -> list[str]:
    """Distinct nontrivial elements a^m l^n of the cusp subgroup."""
    pairs: list[tuple] = []
    while len(pairs) < count:
        m, n = rng.randint(-M_RANGE, M_RANGE), rng.randint(-N_RANGE, N_RANGE)
        if (m, n) != (0, 0) and (m, n) not in pairs:
            pairs.append((m, n))
    return [_power("a", m) + _power(LONGITUDE, n) for m, n in pairs]


# ---------------------------------------------------------------------------
# the decorated cycle


def _labels_separate(labels: dict) -> bool:
    """No flag carries two equal labels and no pushed vertex tuple degenerates."""
    c0 = ProjPoint(BASE_POINT)
    for t in range(2):
        for flag in flags():
            pts = [labels[(t, c)].apply(c0) for c in flag]
            if flag[1][0] == "L":
                pts.append(TETRAHEDRA[t][flag[1][1]])
            if len(set(pts)) < len(pts):
                return False
    return True


def find_label_seed(start: int = 0, attempts: int = 200) -> int:
    for seed in range(start, start + attempts):
        if _labels_separate(label_cells(seed)):
            return seed
    raise RuntimeError("no separating label choice found")


def decorated_terms(seed: int = LABEL_SEED) -> list[tuple[int, list[str], int | None]]:
    """(coefficient, edge words, cusp or None) for every simplex of the relative cycle."""
    labels = label_cells(seed)
    if not _labels_separate(labels):
        raise RuntimeError(f"label seed {seed} produces degenerate simplices")
    terms: dict = {}

    def add(coeff, words, cusp):
        key = (tuple(words), cusp)
        terms[key] = terms.get(key, 0) + coeff

    for t in range(2):
        orient = 1 if t == 0 else -1  # T1 listed as (inf, 0, 1, conj zeta) is negatively oriented
        for flag in flags():
            sign = orient * flag_sign(flag)
            lab = [labels[(t, c)] for c in flag]
            words = [free_reduce((lab[j].inverse() @ lab[j + 1]).word) for j in range(3)]
            add(sign, words, None)
            if flag[1][0] == "L":
                bw = words[1:]
                add(sign, bw, 1)
    return [(c, list(w), cusp) for (w, cusp), c in terms.items() if c != 0]


def build() -> dict:
    check_pairings()
    f = FIELD
    t1 = TETRAHEDRA[1]
    return {
        "header": {"field": f.header(), "precision": 212, "coefficient_mode": "Q", "primary": "decorated"},
        "generators": {k: [f.format(x) for x in g.entries()] for k, g in GENERATORS.items()},
        "relators": RELATORS,
        "cusps": [{"index": 1, "generators": CUSP_WORDS, "fixed_point": format_point(INF)}],
        "base_point": format_point(ProjPoint(BASE_POINT)),
        "decorated": [
            {"coeff": str(c), "words": w, "cusp": cusp} for c, w, cusp in decorated_terms()
        ],
        "raw_cycle": {
            "terms": [
                {"coeff": "1", "points": [format_point(p) for p in TETRAHEDRA[0]]},
                # reordered so that the second tetrahedron is positively oriented too
                {"coeff": "1", "points": [format_point(p) for p in (t1[0], t1[2], t1[1], t1[3])]},
            ],
            "pairings": sorted({w for *_, w, _ in all_pairings() if w}),
        },
        "shapes": [{"coeff": "1", "z": f.format(ZETA)}, {"coeff": "1", "z": f.format(ZETA)}],
    }


def write(path: Path | str) -> None:
    Path(path).write_text(json.dumps(build(), indent=1) + "\n")


if __name__ == "__main__":
    write(Path(__file__).with_name("figure_eight.json"))
