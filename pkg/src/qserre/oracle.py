"""Brute-force ideal membership by exact linear algebra.

This is the independent cross-check for the rewriting engine: a
homogeneous element lies in the two-sided ideal iff it is a linear
combination of padded relations u * rel * v of the same degree, which is
a finite linear-algebra question over Q(s).

All defining relations preserve the multiset of letters in a word, so
each homogeneous component splits further into multidegree blocks that
are decided separately; the elimination never sees more than a few
hundred columns.  A randomized evaluation at rational points filters
clear non-members before any exact elimination runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from qserre.freealg import Alphabet, NcPoly
from qserre.qfield import ONE


@dataclass(frozen=True)
class HomogeneousSlice:
    degree: int
    vector: NcPoly


def split_homogeneous(p: NcPoly):
    """Decompose into homogeneous slices; the zero polynomial gives none."""
    by_deg = {}
    for w, c in p.terms.items():
        by_deg.setdefault(len(w), {})[w] = c
    return [HomogeneousSlice(d, NcPoly(p.alphabet, t))
            for d, t in sorted(by_deg.items())]


def _content(word, nletters):
    c = [0] * nletters
    for i in word:
        c[i] += 1
    return tuple(c)


def _multiset_words(content):
    """All distinct words with the given letter counts."""
    total = sum(content)
    if total == 0:
        yield ()
        return
    counts = list(content)
    word = [0] * total

    def rec(pos):
        if pos == total:
            yield tuple(word)
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                word[pos] = i
                yield from rec(pos + 1)
                counts[i] = c

    yield from rec(0)


def _perm_count(content):
    n = factorial(sum(content))
    for c in content:
        n //= factorial(c)
    return n


class _Echelon:
    """Row space with unit leading coefficients, pivoted by largest word."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots = {}  # leading word -> dict word -> coeff

    def residue(self, vec):
        vec = dict(vec)
        pivots = self.pivots
        while vec:
            lead = max(vec)
            row = pivots.get(lead)
            if row is None:
                return vec, lead
            c = vec[lead]
            for w, rc in row.items():
                v = vec.get(w)
                v = -(c * rc) if v is None else v - c * rc
                if v:
                    vec[w] = v
                elif w in vec:
                    del vec[w]
        return vec, None

    def insert(self, vec) -> bool:
        """Reduce and adjoin if independent; True when the rank grew."""
        res, lead = self.residue(vec)
        if lead is None:
            return False
        lc = res[lead]
        inv = ONE / lc
        self.pivots[lead] = {w: inv * c for w, c in res.items()}
        return True

    @property
    def rank(self):
        return len(self.pivots)


class IdealOracle:
    """Membership and dimension queries for one fixed relation list."""

    def __init__(self, alphabet: Alphabet, relations):
        self.alphabet = alphabet
        self.relations = tuple(relations)
        self._rel_contents = []
        n = len(alphabet)
        for rel in self.relations:
            if rel.is_zero:
                raise ValueError("zero relation")
            contents = {_content(w, n) for w in rel.terms}
            if len(contents) != 1:
                raise ValueError("relation is not multidegree-homogeneous; "
                                 "blockwise elimination does not apply")
            self._rel_contents.append(next(iter(contents)))
        self._blocks = {}

    def _block(self, content) -> _Echelon:
        """Echelon basis of the ideal's slice with the given letter counts."""
        got = self._blocks.get(content)
        if got is not None:
            return got
        ech = _Echelon()
        n = len(self.alphabet)
        for rel, rc in zip(self.relations, self._rel_contents):
            rem = tuple(a - b for a, b in zip(content, rc))
            if any(x < 0 for x in rem):
                continue
            for pad in _multiset_words(rem):
                for cut in range(len(pad) + 1):
                    u, v = pad[:cut], pad[cut:]
                    vec = {u + w + v: c for w, c in rel.terms.items()}
                    ech.insert(vec)
        self._blocks[content] = ech
        return ech

    def slice_member(self, s: HomogeneousSlice) -> bool:
        n = len(self.alphabet)
        grouped = {}
        for w, c in s.vector.terms.items():
            grouped.setdefault(_content(w, n), {})[w] = c
        for content, vec in grouped.items():
            res, lead = self._block(content).residue(vec)
            if lead is not None:
                return False
        return True

    def member(self, p: NcPoly, degree_cap: int):
        slices = split_homogeneous(p)
        for s in slices:
            if s.degree > degree_cap:
                raise ValueError(
                    "slice of degree %d exceeds the oracle cap %d; "
                    "use the rewriting path" % (s.degree, degree_cap))
        per_slice = {s.degree: self.slice_member(s) for s in slices}
        return MembershipResult(all(per_slice.values()), per_slice)

    def quotient_dimension(self, degree: int) -> int:
        """dim of the degree component of the quotient algebra."""
        n = len(self.alphabet)
        total = 0
        for content in _compositions(degree, n):
            total += _perm_count(content) - self._block(content).rank
        return total

    def quotient_dimensions(self, d_max: int):
        return [self.quotient_dimension(d) for d in range(d_max + 1)]


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    per_slice: dict

    def __bool__(self):
        return self.member


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def ideal_member(p: NcPoly, relations, degree_cap: int) -> MembershipResult:
    """Exact membership verdict per homogeneous slice (and overall)."""
    return IdealOracle(p.alphabet, relations).member(p, degree_cap)


# ---------------------------------------------------------------------------
# randomized pre-check: specialize s and decide over plain rationals
# ---------------------------------------------------------------------------

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def random_points(count: int, seed) -> list:
    """Ratios of distinct small primes; s in {0, 1, -1} can never occur."""
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        a, b = rng.sample(_PRIMES, 2)
        pt = Fraction(a, b)
        if pt not in pts:
            pts.append(pt)
    return pts


class _RationalEchelon:
    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots = {}

    def residue(self, vec):
        vec = dict(vec)
        pivots = self.pivots
        while vec:
            lead = max(vec)
            row = pivots.get(lead)
            if row is None:
                return vec, lead
            c = vec[lead]
            for w, rc in row.items():
                v = vec.get(w, 0) - c * rc
                if v:
                    vec[w] = v
                elif w in vec:
                    del vec[w]
        return vec, None

    def insert(self, vec):
        res, lead = self.residue(vec)
        if lead is None:
            return False
        inv = 1 / res[lead]
        self.pivots[lead] = {w: inv * c for w, c in res.items()}
        return True


def randomized_precheck(p: NcPoly, relations, points: int = 3, seed=0) -> bool:
    """False means certainly not a member; True means run the exact check.

    Coefficients are evaluated at random rational s-points and the same
    blockwise membership problem is solved over Q.  A point where some
    denominator vanishes is discarded and resampled.
    """
    if p.is_zero:
        return True
    alphabet = p.alphabet
    n = len(alphabet)
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < points:
        attempts += 1
        if attempts > 50 * max(points, 1):
            raise RuntimeError("could not find enough admissible points")
        a, b = rng.sample(_PRIMES, 2)
        pt = Fraction(a, b)
        try:
            rels_ev = [{w: c(pt) for w, c in rel.terms.items()}
                       for rel in relations]
            p_ev = {w: c(pt) for w, c in p.terms.items()}
        except ZeroDivisionError:
            continue
        done += 1
        by_deg = {}
        for w, c in p_ev.items():
            by_deg.setdefault(len(w), {})[w] = c
        for d, vec_d in by_deg.items():
            grouped = {}
            for w, c in vec_d.items():
                grouped.setdefault(_content(w, n), {})[w] = c
            for content, vec in grouped.items():
                ech = _RationalEchelon()
                for rel, rel_ev in zip(relations, rels_ev):
                    rc = _content(next(iter(rel.terms)), n)
                    rem = tuple(x - y for x, y in zip(content, rc))
                    if any(x < 0 for x in rem):
                        continue
                    for pad in _multiset_words(rem):
                        for cut in range(len(pad) + 1):
                            u, v = pad[:cut], pad[cut:]
                            ech.insert({u + w + v: c for w, c in rel_ev.items()})
                res, lead = ech.residue(vec)
                if lead is not None:
                    return False
    return True
