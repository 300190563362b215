"""Degree-bounded completion and normal forms for the defining ideals.

Rules rewrite a leading word to a combination of deg-lex smaller words.
Because every defining relation is homogeneous, completion per degree is
guaranteed to terminate: critical pairs up to the requested degree are
resolved, new rules picked up along the way, and the resulting set is a
confluent rewriting system for all inputs within the certified degree.

Reduction is leftmost-first and memoized per word, which turns the
repeated reductions of large ordered products into a cheap DP.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from qserre.freealg import Alphabet, NcPoly, chi_e_relations, serre_relations, x_alphabet, chi_e_alphabet
from qserre.qfield import ONE


class DegLexOrder:
    """Degree first, then left-to-right letter precedence.

    Compatible with concatenation, so oriented homogeneous rules always
    rewrite downhill.  Default precedence is the alphabet order.
    """

    __slots__ = ("precedence",)

    def __init__(self, alphabet: Alphabet, precedence=None):
        if precedence is None:
            precedence = tuple(range(len(alphabet)))
        else:
            precedence = tuple(precedence)
            if sorted(precedence) != list(range(len(alphabet))):
                raise ValueError("precedence must be a permutation of the letters")
        object.__setattr__(self, "precedence", precedence)

    def __setattr__(self, *a):
        raise AttributeError("DegLexOrder is immutable")

    def key(self, word):
        p = self.precedence
        return (len(word), tuple(p[i] for i in word))

    def leading_word(self, p: NcPoly):
        return max(p.terms, key=self.key)

    def __eq__(self, other):
        return isinstance(other, DegLexOrder) and self.precedence == other.precedence

    def __hash__(self):
        return hash(self.precedence)


class RewriteRule:
    """lhs word -> rhs polynomial, homogeneous, strictly order-decreasing."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs: NcPoly, order: DegLexOrder):
        lhs = tuple(lhs)
        if not lhs:
            raise ValueError("empty left-hand side")
        key = order.key(lhs)
        for w in rhs.terms:
            if len(w) != len(lhs):
                raise ValueError("rule is not homogeneous: %s -> %s"
                                 % (lhs, rhs))
            if order.key(w) >= key:
                raise ValueError("rhs word %s is not smaller than lhs %s"
                                 % (w, lhs))
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    def __setattr__(self, *a):
        raise AttributeError("RewriteRule is immutable")

    def as_poly(self) -> NcPoly:
        return NcPoly.monomial(self.rhs.alphabet, self.lhs) - self.rhs

    def __repr__(self):
        return "<Rule %s -> %s>" % (self.rhs.alphabet.word_str(self.lhs), self.rhs)


def orient(relation: NcPoly, order: DegLexOrder) -> RewriteRule:
    """Turn a relation into the monic rule rewriting its leading word."""
    if relation.is_zero:
        raise ValueError("cannot orient the zero relation")
    lead = order.leading_word(relation)
    lc = relation.terms[lead]
    rest = relation - NcPoly.monomial(relation.alphabet, lead, lc)
    rhs = rest.map_coefficients(lambda c: -(c / lc))
    return RewriteRule(lead, rhs, order)


class _Reducer:
    """Leftmost rewriting to fixpoint over a frozen rule list, memoized."""

    def __init__(self, rules):
        self.rules = tuple(rules)
        self.memo = {(): {(): ONE}}
        self._min_len = min((len(r.lhs) for r in self.rules), default=0)

    def _find(self, word):
        rules = self.rules
        if not rules or len(word) < self._min_len:
            return None
        for i in range(len(word)):
            for r in rules:
                lhs = r.lhs
                if word[i:i + len(lhs)] == lhs:
                    return i, r
        return None

    def word_normal_form(self, word):
        memo = self.memo
        got = memo.get(word)
        if got is not None:
            return got
        stack = [word]
        while stack:
            w = stack[-1]
            if w in memo:
                stack.pop()
                continue
            hit = self._find(w)
            if hit is None:
                memo[w] = {w: ONE}
                stack.pop()
                continue
            i, rule = hit
            u, v = w[:i], w[i + len(rule.lhs):]
            todo = [u + rw + v for rw in rule.rhs.terms]
            missing = [t for t in todo if t not in memo]
            if missing:
                stack.extend(missing)
                continue
            out = {}
            for rw, rc in rule.rhs.terms.items():
                for w2, c2 in memo[u + rw + v].items():
                    c = rc * c2
                    c0 = out.get(w2)
                    c = c if c0 is None else c0 + c
                    if c:
                        out[w2] = c
                    elif w2 in out:
                        del out[w2]
            memo[w] = out
            stack.pop()
        return memo[word]

    def normal_form(self, p: NcPoly) -> NcPoly:
        out = {}
        for w, c in p.terms.items():
            for w2, c2 in self.word_normal_form(w).items():
                v = c * c2
                v0 = out.get(w2)
                v = v if v0 is None else v0 + v
                if v:
                    out[w2] = v
                elif w2 in out:
                    del out[w2]
        return NcPoly(p.alphabet, out)

    def is_normal(self, word) -> bool:
        return self._find(word) is None


@dataclass(frozen=True)
class ReduceOutcome:
    """Normal form plus whether the certified degree covered the input."""

    poly: NcPoly
    certified: bool


class RuleSet:
    """Inter-reduced rewrite rules with a confluence certificate up to a degree."""

    __slots__ = ("alphabet", "order", "rules", "completed_degree", "_reducer")

    def __init__(self, alphabet, order, rules, completed_degree=0):
        rules = tuple(rules)
        lhss = [r.lhs for r in rules]
        for a in lhss:
            for b in lhss:
                if a is not b and _contains(b, a):
                    raise ValueError("rule set not inter-reduced: %s inside %s"
                                     % (a, b))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "completed_degree", completed_degree)
        object.__setattr__(self, "_reducer", _Reducer(rules))

    def __setattr__(self, *a):
        raise AttributeError("RuleSet is immutable; complete() returns a new one")

    def __len__(self):
        return len(self.rules)

    def reduce(self, p: NcPoly) -> NcPoly:
        return self._reducer.normal_form(p)

    def reduce_flagged(self, p: NcPoly) -> ReduceOutcome:
        nf = self._reducer.normal_form(p)
        d = p.degree
        return ReduceOutcome(nf, d is None or d <= self.completed_degree)

    def is_normal_word(self, word) -> bool:
        return self._reducer.is_normal(word)


def _contains(hay, needle):
    n = len(needle)
    return any(hay[i:i + n] == needle for i in range(len(hay) - n + 1))


def reduce(p: NcPoly, rules: RuleSet) -> NcPoly:
    """Normal form of p; canonical when deg(p) <= rules.completed_degree."""
    return rules.reduce(p)


def base_rules(rank: int) -> RuleSet:
    """Oriented defining rules of the rank-r presentation (not yet completed)."""
    alphabet = x_alphabet(rank)
    order = DegLexOrder(alphabet)
    rules = [orient(rel, order) for rel in serre_relations(alphabet)]
    return RuleSet(alphabet, order, rules, completed_degree=0)


def chi_e_rules(rank: int) -> RuleSet:
    """Oriented rules of the quantum-coordinate presentation."""
    alphabet = chi_e_alphabet(rank)
    order = DegLexOrder(alphabet)
    rules = [orient(rel, order) for rel in chi_e_relations(alphabet)]
    return RuleSet(alphabet, order, rules, completed_degree=0)


def _overlaps(a, b):
    """Proper suffix-of-a = prefix-of-b overlaps, as overlap lengths."""
    for k in range(1, min(len(a), len(b))):
        if a[len(a) - k:] == b[:k]:
            yield k


def complete(rules: RuleSet, max_degree: int, max_steps: int = 100000) -> RuleSet:
    """Resolve all critical pairs of composed degree <= max_degree.

    Homogeneity makes this terminate on its own; max_steps only guards
    against implementation bugs.  Returns a new RuleSet whose reductions
    are canonical for inputs of degree <= max_degree.
    """
    if max_degree < 3 and rules.rules:
        raise ValueError("max_degree must be at least 3")
    alphabet, order = rules.alphabet, rules.order
    work = list(rules.rules)
    seq = 0
    heap = []

    def queue_pairs_with(i):
        """Push every overlap (critical pair) involving rule i, both sides."""
        nonlocal seq
        ri = work[i]
        for j in range(i + 1):
            rj = work[j]
            if rj is None:
                continue
            for a, b, ia, ib in ((ri.lhs, rj.lhs, i, j), (rj.lhs, ri.lhs, j, i)):
                for k in _overlaps(a, b):
                    d = len(a) + len(b) - k
                    if d <= max_degree:
                        heapq.heappush(heap, (d, seq, ia, ib, k))
                        seq += 1
                if ri is rj:
                    break  # self-overlaps only once

    for i in range(len(work)):
        queue_pairs_with(i)

    reducer = _Reducer([r for r in work if r is not None])
    steps = 0
    candidates = []  # displaced rule polynomials waiting to re-enter

    def add_rule(poly):
        """Reduce, orient and insert; displaced rules go back to candidates."""
        nonlocal reducer
        nf = reducer.normal_form(poly)
        if nf.is_zero:
            return False
        new = orient(nf, order)
        for idx, r in enumerate(work):
            if r is not None and _contains(r.lhs, new.lhs):
                candidates.append(r.as_poly())
                work[idx] = None
        work.append(new)
        reducer = _Reducer([r for r in work if r is not None])
        queue_pairs_with(len(work) - 1)
        return True

    while heap or candidates:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("completion exceeded the step budget")
        if candidates:
            add_rule(candidates.pop())
            continue
        d, _, ia, ib, k = heapq.heappop(heap)
        ra, rb = work[ia], work[ib]
        if ra is None or rb is None:
            continue
        a, b = ra.lhs, rb.lhs
        if a[len(a) - k:] != b[:k]:
            continue
        tail = b[k:]
        head = a[:len(a) - k]
        left = ra.rhs * NcPoly.monomial(alphabet, tail)
        right = NcPoly.monomial(alphabet, head) * rb.rhs
        spoly = left - right
        if spoly.is_zero:
            continue
        add_rule(spoly)

    final = [r for r in work if r is not None]
    # tail-reduce right-hand sides against the finished system
    reducer = _Reducer(final)
    tidy = []
    for r in final:
        others = _Reducer([x for x in final if x is not r])
        rhs = others.normal_form(r.rhs)
        tidy.append(RewriteRule(r.lhs, rhs, order))
    tidy.sort(key=lambda r: order.key(r.lhs))
    return RuleSet(alphabet, order, tidy, completed_degree=max_degree)


def critical_pair_residuals(rules: RuleSet, max_degree: int):
    """All S-polynomial normal forms up to max_degree; empty support = confluent."""
    out = []
    rs = rules.rules
    for i in range(len(rs)):
        for j in range(i + 1):
            for a, b in ((rs[i].lhs, rs[j].lhs), (rs[j].lhs, rs[i].lhs)):
                for k in _overlaps(a, b):
                    d = len(a) + len(b) - k
                    if d > max_degree:
                        continue
                    ra = next(r for r in rs if r.lhs == a)
                    rb = next(r for r in rs if r.lhs == b)
                    tail, head = b[k:], a[:len(a) - k]
                    spoly = (ra.rhs * NcPoly.monomial(rules.alphabet, tail)
                             - NcPoly.monomial(rules.alphabet, head) * rb.rhs)
                    out.append(((a, b, k), rules.reduce(spoly)))
                if rs[i] is rs[j]:
                    break
    return out


def normal_words(rules: RuleSet, degree: int):
    """All words of the given degree containing no rule lhs as a subword."""
    lhss = [r.lhs for r in rules.rules]
    maxlen = max((len(l) for l in lhss), default=1)
    level = [()]
    for _ in range(degree):
        nxt = []
        for w in level:
            for i in range(len(rules.alphabet)):
                w2 = w + (i,)
                # only suffixes ending at the new letter can be fresh lhs hits
                tailok = True
                for lhs in lhss:
                    n = len(lhs)
                    if n <= len(w2) and w2[len(w2) - n:] == lhs:
                        tailok = False
                        break
                if tailok:
                    nxt.append(w2)
        level = nxt
    return level


def normal_word_counts(rules: RuleSet, d_max: int):
    """Count of normal words per degree 0..d_max (the Hilbert diagnostic)."""
    if d_max > rules.completed_degree:
        raise ValueError("counts requested beyond the certified degree")
    counts = []
    lhss = [r.lhs for r in rules.rules]
    level = [()]
    counts.append(1)
    for _ in range(d_max):
        nxt = []
        for w in level:
            for i in range(len(rules.alphabet)):
                w2 = w + (i,)
                hit = False
                for lhs in lhss:
                    n = len(lhs)
                    if n <= len(w2) and w2[len(w2) - n:] == lhs:
                        hit = True
                        break
                if not hit:
                    nxt.append(w2)
        level = nxt
        counts.append(len(level))
    return counts


# ---------------------------------------------------------------------------
# text serialization: one `LHS -> POLY` line per rule
# ---------------------------------------------------------------------------

def dump_rules(rules: RuleSet) -> str:
    lines = ["# alphabet: %s" % ",".join("%s:%d" % f for f in rules.alphabet.families),
             "# completed_degree: %d" % rules.completed_degree]
    for r in rules.rules:
        lines.append("%s -> %s" % (rules.alphabet.word_str(r.lhs), r.rhs))
    return "\n".join(lines) + "\n"


def load_rules(text: str, alphabet: Alphabet = None) -> RuleSet:
    from qserre.exprparse import parse_poly
    completed = 0
    rules = []
    order = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("completed_degree:"):
                completed = int(body.split(":", 1)[1])
            elif body.startswith("alphabet:") and alphabet is None:
                fams = []
                for f in body.split(":", 1)[1].split(","):
                    name, cnt = f.strip().rsplit(":", 1)
                    fams.append((name.strip(), int(cnt)))
                alphabet = Alphabet(fams)
            continue
        if alphabet is None:
            raise ValueError("no alphabet header and none supplied")
        if order is None:
            order = DegLexOrder(alphabet)
        lhs_txt, rhs_txt = line.split("->", 1)
        lhs = tuple(alphabet.index(tok) for tok in lhs_txt.split())
        rhs = parse_poly(rhs_txt.strip(), alphabet)
        rules.append(RewriteRule(lhs, rhs, order))
    if alphabet is None:
        raise ValueError("empty rule file")
    if order is None:
        order = DegLexOrder(alphabet)
    return RuleSet(alphabet, order, rules, completed_degree=completed)
