"""Differential graded tensor-algebra models for fat wedges of spheres.

Generators are indexed by increasing vertex sequences I; the generator for
I has degree (sum of (m_i + 1) over I) - 1 and its differential is the
signed sum of graded commutators over type-II shuffles of I.  Homology is
computed degreewise by exact integer linear algebra; the differential
preserves the vertex-content multidegree of a word, which splits the
computation into small independent blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import sparse_rank
from .series import (
    SeriesError,
    TruncatedSeries,
    free_gc_series,
    geometric_series,
    shuffle_sign,
    type2_shuffles,
)
from .tensor import TensorElement, commutator


class ModelError(ValueError):
    """Invalid model parameters."""


def generator_degree(I, dims):
    return sum(dims[i - 1] + 1 for i in I) - 1


def a_element(I, dims):
    """Signed sum of commutators attached to the index set I.

    -sum over type-II shuffles (J, J') of (-1)^(|b_J| + eps(J,J')) [b_J, b_J'],
    homogeneous of degree |b_I| - 1.  This is the unique sign rule (up to a
    global sign) of this shape for which the differential squares to zero
    for every choice of sphere parameters; when all parameters are 1 the
    exponent |b_J| is odd for every shuffle and the rule reduces to a
    constant overall sign.
    """
    I = tuple(I)
    if len(I) < 2:
        raise ModelError(f"index set must have at least two vertices, got {I}")
    zdeg = {i: dims[i - 1] + 1 for i in I}
    degree_of = lambda J: generator_degree(J, dims)
    total = TensorElement.zero()
    for J, Jp in type2_shuffles(I):
        eps = shuffle_sign(I, J, Jp, zdeg)
        sign = -1 if (generator_degree(J, dims) + eps) % 2 == 0 else 1
        bracket = commutator(
            TensorElement.term((J,)), TensorElement.term((Jp,)), degree_of
        )
        total = total + bracket.scale(sign)
    return total


@dataclass(frozen=True)
class DGAModel:
    """Tensor algebra on index-set generators with a derivation differential."""

    dims: tuple
    generators: tuple  # index tuples, sorted by (length, lex)
    differential: dict = field(compare=False)

    @property
    def n(self):
        return len(self.dims)

    def degree_of(self, I):
        return generator_degree(I, self.dims)

    def word_degree(self, word):
        return sum(self.degree_of(I) for I in word)

    def d_word(self, word):
        """Derivation extension: d(xy) = d(x)y + (-1)^|x| x d(y)."""
        total = TensorElement.zero()
        prefix_deg = 0
        for pos, letter in enumerate(word):
            dg = self.differential[letter]
            if dg:
                sign = 1 if prefix_deg % 2 == 0 else -1
                prefix = word[:pos]
                suffix = word[pos + 1 :]
                for dword, coeff in dg.items():
                    total.add_term(prefix + dword + suffix, sign * coeff)
            prefix_deg += self.degree_of(letter)
        return total

    def d_element(self, element):
        total = TensorElement.zero()
        for word, coeff in element.items():
            for w2, c2 in self.d_word(word).items():
                total.add_term(w2, coeff * c2)
        return total

    def generator_degree_counts(self):
        counts = {}
        for I in self.generators:
            d = self.degree_of(I)
            counts[d] = counts.get(d, 0) + 1
        return dict(sorted(counts.items()))


def _validate_dims(dims):
    dims = tuple(dims)
    if len(dims) < 2:
        raise ModelError(f"need at least two spheres, got dims={dims}")
    if any(m < 1 for m in dims):
        raise ModelError(f"all sphere parameters must be >= 1, got {dims}")
    return dims


def _subsets(n, include_full):
    import itertools

    verts = range(1, n + 1)
    out = []
    top = n if include_full else n - 1
    for k in range(1, top + 1):
        out.extend(itertools.combinations(verts, k))
    out.sort(key=lambda I: (len(I), I))
    return tuple(out)


def build_fat_wedge_model(dims, cutoff=None):
    """Model of the fat wedge: generators for all nonempty proper index sets."""
    dims = _validate_dims(dims)
    gens = _subsets(len(dims), include_full=False)
    diff = {
        I: (a_element(I, dims) if len(I) >= 2 else TensorElement.zero())
        for I in gens
    }
    return DGAModel(dims=dims, generators=gens, differential=diff)


def build_product_model(dims, cutoff=None):
    """Fat-wedge model plus the top generator, whose differential attaches
    the top cell of the product."""
    dims = _validate_dims(dims)
    gens = _subsets(len(dims), include_full=True)
    diff = {
        I: (a_element(I, dims) if len(I) >= 2 else TensorElement.zero())
        for I in gens
    }
    return DGAModel(dims=dims, generators=gens, differential=diff)


def check_d_squared(model, max_degree):
    """Verify d(d(w)) = 0 up to ``max_degree``.

    Since d extends as a derivation, d^2 vanishes on all words iff it
    vanishes on generators; two-letter words are checked as well to
    exercise the sign handling of the extension.  Returns (True, None) or
    (False, witness_word).
    """
    for I in model.generators:
        if model.degree_of(I) > max_degree:
            continue
        dd = model.d_element(model.differential[I])
        if not dd.is_zero():
            witness = min(dd, key=lambda w: (len(w), w))
            return False, witness
    for I in model.generators:
        for J in model.generators:
            if model.degree_of(I) + model.degree_of(J) > max_degree:
                continue
            dd = model.d_element(model.d_word((I, J)))
            if not dd.is_zero():
                witness = min(dd, key=lambda w: (len(w), w))
                return False, witness
    return True, None


def _words_by_content(model, max_degree):
    """All words of degree <= max_degree, grouped by vertex-content vector.

    Returns {content: {letter_count: [words]}}; content is the tuple over
    vertices 1..n counting how often each vertex occurs among the word's
    letters.  The differential preserves content and raises the letter
    count by one.
    """
    letters = model.generators
    degs = [model.degree_of(I) for I in letters]
    n = model.n
    groups = {}

    def record(word, content):
        groups.setdefault(tuple(content), {}).setdefault(len(word), []).append(word)

    def extend(word, degree, content):
        for letter, dl in zip(letters, degs):
            nd = degree + dl
            if nd > max_degree:
                continue
            for i in letter:
                content[i - 1] += 1
            nw = word + (letter,)
            record(nw, content)
            extend(nw, nd, content)
            for i in letter:
                content[i - 1] -= 1

    record((), [0] * n)
    extend((), 0, [0] * n)
    return groups


def homology_series(model, max_degree):
    """Graded dimensions of the model's homology through ``max_degree``.

    Per degree d: (number of words of degree d) minus the ranks of the
    incoming and outgoing differentials, computed blockwise per content
    vector by exact integer elimination.
    """
    ok, witness = check_d_squared(model, max_degree + 1)
    if not ok:
        raise ModelError(f"differential does not square to zero, witness {witness}")
    groups = _words_by_content(model, max_degree + 1)
    out = [0] * (max_degree + 1)
    for content, levels in groups.items():
        weight = sum(
            c * (model.dims[i] + 1) for i, c in enumerate(content)
        )  # degree of a word at level r is weight - r
        ranks = {}
        for r, words in levels.items():
            target = levels.get(r + 1)
            if target is None:
                ranks[r] = 0
                continue
            index = {w: i for i, w in enumerate(target)}
            rows = []
            for w in words:
                image = model.d_word(w)
                rows.append({index[iw]: c for iw, c in image.items()})
            ranks[r] = sparse_rank(rows)
        for r, words in levels.items():
            degree = weight - r
            if 0 <= degree <= max_degree:
                h = len(words) - ranks.get(r, 0) - ranks.get(r - 1, 0)
                out[degree] += h
    return TruncatedSeries(cutoff=max_degree, coeffs=tuple(out))


def bubenik_series(dims, convention, max_degree):
    """Closed-form loop-homology series of the fat wedge for n >= 3 spheres.

    The abelian factor on the coordinate generators times the tensor-algebra
    series on the bracket set {[[u, b_{j_1}], ..., b_{j_l}]}, where u has
    degree (sum of (m_i + 1)) - 2 and the j's range over multisets.
    """
    dims = _validate_dims(dims)
    if len(dims) < 3:
        raise ModelError(
            f"closed form requires at least 3 spheres, got {len(dims)}; "
            "for n = 2 the loop homology is the free tensor algebra"
        )
    N = sum(m + 1 for m in dims) - 2
    g = TruncatedSeries.monomial(N, max_degree)
    for m in dims:
        g = g * geometric_series(TruncatedSeries.monomial(m, max_degree))
    if g.coeffs[0] != 0:
        raise SeriesError("bracket series has nonzero constant term")
    abelian = free_gc_series([(m, 1) for m in dims], convention, max_degree)
    return abelian * geometric_series(g)
