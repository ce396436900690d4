"""Presented graded algebras attached to a simplicial complex.

Two families of presentations are built from the missing-face data of a
complex: the cp-case (all coordinate generators in degree 1, bracket
generators in even degree) and the sphere-case (coordinate generator i in
degree m_i).  Graded dimensions of the presented algebras are computed by
degree-truncated rewriting, with a direct linear-algebra route as an
independent oracle, and the kernel-generator series is extracted from the
factorization total = abelian · 1/(1−g).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .complexes import j_complement, missing_faces
from .linalg import sparse_rank
from .series import (
    FactorizationError,
    SeriesError,
    TruncatedSeries,
    free_gc_series,
    series_div_exact,
)
from .rewriting import RewritingSystem
from .tensor import TensorElement


class PresentationError(ValueError):
    """Invalid presentation request."""


CONVENTIONS = ("exterior-on-odd", "polynomial-all")


def b_name(i):
    return f"b{i}"


def u_name(sigma):
    return "u(" + ",".join(str(v) for v in sigma) + ")"


def n_sigma(sigma, dims):
    """Degree of the bracket generator for ``sigma`` in the sphere case."""
    return sum(dims[i - 1] + 1 for i in sigma) - 2


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    label: tuple  # ("coordinate", i) or ("higher", sigma)


@dataclass(frozen=True)
class BracketGenerator:
    """One iterated bracket [[u_sigma, b_{j_1}], ..., b_{j_l}]."""

    sigma: tuple
    js: tuple
    degree: int
    flavor: str  # "multiset" (repeats allowed) or "strict" (subset of the complement)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple
    target: str  # "cp-case" or "sphere-case"
    convention: str

    @cached_property
    def degree_map(self):
        return {g.name: g.degree for g in self.generators}

    def degree_of(self, name):
        return self.degree_map[name]

    def generator_pairs(self):
        return tuple((g.name, g.degree) for g in self.generators)

    def relation_degree(self, rel):
        word = next(iter(rel))
        return sum(self.degree_map[x] for x in word)

    def to_json_dict(self):
        return {
            "target": self.target,
            "convention": self.convention,
            "generators": [
                {
                    "name": g.name,
                    "degree": g.degree,
                    "label": {
                        "kind": g.label[0],
                        "value": list(g.label[1])
                        if isinstance(g.label[1], tuple)
                        else g.label[1],
                    },
                }
                for g in self.generators
            ],
            "relations": [
                [[coeff, list(word)] for word, coeff in rel.sorted_terms()]
                for rel in self.relations
            ],
        }


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise PresentationError(f"unknown convention {convention!r}")


def _edges(K):
    return sorted(f for f in K.faces if len(f) == 2)


def build_cp_presentation(K):
    """Loop-homology presentation with all coordinate targets in degree 1.

    Generators: b_i of degree 1 and u_sigma of degree 2k−2 for each
    k-vertex missing face with k ≥ 3.  Relations: b_i² for every i,
    anticommutators for the edges of K, and commutators [u_sigma, b_j] for
    j ∈ sigma.  Two-vertex missing faces get no generator: their class is
    the derived element b_i b_j + b_j b_i, and its bracket consequences
    hold automatically in the quotient.
    """
    n = K.n
    gens = [Generator(b_name(i), 1, ("coordinate", i)) for i in range(1, n + 1)]
    rels = []
    for i in range(1, n + 1):
        rels.append(TensorElement.term((b_name(i), b_name(i))))
    for i, j in _edges(K):
        rel = TensorElement.term((b_name(i), b_name(j)))
        rel.add_term((b_name(j), b_name(i)), 1)
        rels.append(rel)
    for mf in missing_faces(K):
        sigma = mf.vertices
        if len(sigma) < 3:
            continue
        u = u_name(sigma)
        gens.append(Generator(u, 2 * len(sigma) - 2, ("higher", sigma)))
        for j in sigma:
            rel = TensorElement.term((u, b_name(j)))
            rel.add_term((b_name(j), u), -1)
            rels.append(rel)
    return Presentation(
        generators=tuple(gens),
        relations=tuple(rels),
        target="cp-case",
        convention="exterior-on-odd",
    )


def build_sphere_presentation(K, dims, convention="exterior-on-odd"):
    """Loop-homology presentation with coordinate target i a sphere S^{m_i+1}.

    Generators: b_i of degree m_i and u_sigma of degree N_sigma for each
    missing face with ≥ 3 vertices.  Relations: graded commutators
    [b_i, b_j] for the edges of K; under exterior-on-odd additionally
    [b_i, b_i] = 2b_i² for odd-degree b_i.  Bracket generators satisfy no
    relations.
    """
    _check_convention(convention)
    dims = tuple(dims)
    if len(dims) != K.n:
        raise PresentationError(f"expected {K.n} sphere parameters, got {len(dims)}")
    if any(m < 1 for m in dims):
        raise PresentationError(f"all sphere parameters must be >= 1, got {dims}")
    gens = [Generator(b_name(i), dims[i - 1], ("coordinate", i)) for i in range(1, K.n + 1)]
    rels = []
    if convention == "exterior-on-odd":
        for i in range(1, K.n + 1):
            if dims[i - 1] % 2 == 1:
                rels.append(TensorElement.term((b_name(i), b_name(i)), 2))
    for i, j in _edges(K):
        sign = -1 if (dims[i - 1] * dims[j - 1]) % 2 == 0 else 1
        rel = TensorElement.term((b_name(i), b_name(j)))
        rel.add_term((b_name(j), b_name(i)), sign)
        rels.append(rel)
    for mf in missing_faces(K):
        sigma = mf.vertices
        if len(sigma) < 3:
            continue
        gens.append(Generator(u_name(sigma), n_sigma(sigma, dims), ("higher", sigma)))
    return Presentation(
        generators=tuple(gens),
        relations=tuple(rels),
        target="sphere-case",
        convention=convention,
    )


def abelian_series(p, max_degree):
    """Series of the free graded-commutative algebra on p's coordinate part."""
    gens = [(g.degree, 1) for g in p.generators if g.label[0] == "coordinate"]
    return free_gc_series(gens, p.convention, max_degree)


def _big_missing_faces(K):
    mfs = missing_faces(K)
    for mf in mfs:
        if len(mf.vertices) == 2:
            raise PresentationError(
                f"2-vertex missing face {mf.vertices} present; use the series route"
            )
    return [mf.vertices for mf in mfs]


def enumerate_R_tilde(K):
    """Bracket generators with strictly increasing indices from J_sigma.

    Requires every missing face to have ≥ 3 vertices.  Degrees use the
    cp-case grading (b's in degree 1).
    """
    out = []
    for sigma in _big_missing_faces(K):
        base = 2 * len(sigma) - 2
        comp = j_complement(sigma, K.n)
        for l in range(len(comp) + 1):
            for js in itertools.combinations(comp, l):
                out.append(BracketGenerator(sigma, js, base + l, "strict"))
    out.sort(key=lambda g: (g.degree, g.sigma, g.js))
    return out


def enumerate_R(K, dims, max_degree):
    """Bracket generators with nondecreasing multiset indices over 1..n.

    Requires every missing face to have ≥ 3 vertices.  Degrees use the
    sphere-case grading: N_sigma plus the sum of the m_{j_t}.
    """
    dims = tuple(dims)
    out = []
    for sigma in _big_missing_faces(K):
        base = n_sigma(sigma, dims)
        if base > max_degree:
            continue

        def grow(js, deg, start, sigma=sigma):
            out.append(BracketGenerator(sigma, js, deg, "multiset"))
            for j in range(start, K.n + 1):
                nd = deg + dims[j - 1]
                if nd <= max_degree:
                    grow(js + (j,), nd, j)

        grow((), base, 1)
    out.sort(key=lambda g: (g.degree, g.sigma, g.js))
    return out


def rewriting_system(p, max_degree, budget_words=2_000_000):
    """Degree-truncated confluent rewriting system for the presentation."""
    return RewritingSystem(p.generator_pairs(), p.relations, max_degree, budget_words)


def graded_dimensions(p, max_degree, method="rewriting", budget_words=2_000_000):
    """Dimensions of the presented algebra per degree ≤ ``max_degree``.

    ``method`` selects the route: "rewriting" counts normal words of the
    completed rewriting system; "linear" computes, per degree, the rank of
    the span of all word·relation·word products by exact integer
    elimination.  The two routes are independent and must agree.
    """
    if method == "rewriting":
        rs = rewriting_system(p, max_degree, budget_words)
        return TruncatedSeries.from_coeffs(rs.series(max_degree), max_degree)
    if method == "linear":
        return _graded_dimensions_linear(p, max_degree)
    raise PresentationError(f"unknown method {method!r}")


def _graded_dimensions_linear(p, max_degree):
    letters = p.generator_pairs()
    words = {0: [()]}
    for d in range(1, max_degree + 1):
        level = []
        for name, deg in letters:
            if deg <= d:
                level.extend(w + (name,) for w in words[d - deg])
        words[d] = level
    dims = [0] * (max_degree + 1)
    dims[0] = 1
    for d in range(1, max_degree + 1):
        index = {w: i for i, w in enumerate(words[d])}
        rows = []
        for rel in p.relations:
            r = p.relation_degree(rel)
            if r > d:
                continue
            for a in range(d - r + 1):
                for x in words[a]:
                    for y in words[d - r - a]:
                        row = {}
                        for w, c in rel.items():
                            i = index[x + w + y]
                            row[i] = row.get(i, 0) + c
                        rows.append(row)
        dims[d] = len(words[d]) - sparse_rank(rows)
    return TruncatedSeries.from_coeffs(dims, max_degree)


def kernel_generator_series(total, abelian_part):
    """The unique g with total = abelian_part · 1/(1−g).

    Both inputs must have constant term 1.  Raises
    :class:`FactorizationError` (carrying the offending degree) if any
    quotient coefficient is fractional or any kernel count is negative.
    """
    if total.coeffs[0] != 1 or abelian_part.coeffs[0] != 1:
        raise SeriesError("both series must have constant term 1")
    h = series_div_exact(total, abelian_part)
    g = series_div_exact(h - TruncatedSeries.one(h.cutoff), h)
    for d, c in enumerate(g.coeffs):
        if c < 0:
            raise FactorizationError(d, f"negative kernel-generator count {c}")
    return g
