"""The theorem suite: every claimed identity, checked at instance level.

Each check builds the two sides of an identity as free-algebra elements
and decides whether their difference lies in the defining ideal, by
rewriting to a canonical normal form and, where slice degrees permit, by
the independent linear-algebra oracle.  The two decision paths must
agree; a disagreement is an engine bug and raises instead of reporting.

Telescoping and factor commutativity hold in the free algebra itself and
are checked by plain expansion, with no ideal involved.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from qserre.freealg import (
    NcPoly, SpectralWindow, ayb_sides, big_Q, c_element, chi_e_alphabet,
    chi_e_relations, k_element, lemma_product, qproduct, serre_relations,
    x_alphabet,
)
from qserre.oracle import IdealOracle, randomized_precheck, split_homogeneous
from qserre.qfield import ONE, q_power
from qserre.rewrite import RuleSet, base_rules, chi_e_rules, complete


class MethodDisagreement(RuntimeError):
    """Rewriting and the oracle returned different verdicts."""


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    params: tuple          # ordered (name, value) pairs
    passed: bool
    residual: NcPoly
    methods: tuple
    millis: float
    notes: tuple = ()

    @property
    def residual_terms(self) -> int:
        return len(self.residual.terms)

    def sort_key(self):
        return (self.identity, tuple((k, repr(v)) for k, v in self.params))

    def __str__(self):
        ps = ", ".join("%s=%s" % kv for kv in self.params)
        status = "pass" if self.passed else "FAIL"
        return "%-16s %-28s %s  [%s]" % (
            self.identity, ps, status, "+".join(self.methods))


class Verifier:
    """Shared context for the x-algebra checks at one rank.

    Completion runs once, lazily, at the configured degree; after that
    every check is pure and safe to run concurrently.
    """

    def __init__(self, rank: int, completion_degree: int = 8,
                 oracle_cap: int = 8, mode: str = "both",
                 precheck_points: int = 2, seed: int = 0, rules=None):
        if mode not in ("rewrite", "oracle", "both"):
            raise ValueError("mode must be rewrite, oracle or both")
        self.rank = rank
        self.alphabet = x_alphabet(rank)
        self.completion_degree = completion_degree
        self.oracle_cap = oracle_cap
        self.mode = mode
        self.precheck_points = precheck_points
        self.seed = seed
        self.relations = serre_relations(self.alphabet)
        if rules is not None and rules.alphabet != self.alphabet:
            raise ValueError("supplied rules are for %r, not %r"
                             % (rules.alphabet, self.alphabet))
        self._rules = rules
        self._oracle = None

    @property
    def rules(self) -> RuleSet:
        if self._rules is None:
            self._rules = complete(base_rules(self.rank),
                                   self.completion_degree)
        return self._rules

    @property
    def oracle(self) -> IdealOracle:
        if self._oracle is None:
            self._oracle = IdealOracle(self.alphabet, self.relations)
        return self._oracle

    # -- the decision core ----------------------------------------------------

    def decide(self, identity: str, params, diff: NcPoly, notes=()) -> VerificationReport:
        """Is diff in the ideal?  Runs the configured methods and compares.

        A zero reduction proves membership at any degree; a nonzero one
        refutes it only within the certified degree.  The oracle proves
        membership only when it covered every slice, but any non-member
        slice it finds is a definite refutation.  Contradictory definite
        verdicts mean the engine is broken and raise.
        """
        t0 = time.perf_counter()
        notes = list(notes)
        methods = []
        in_ideal, not_in_ideal = False, False
        residual = diff

        if self.mode in ("rewrite", "both"):
            out = self.rules.reduce_flagged(diff)
            residual = out.poly
            methods.append("rewrite")
            if out.poly.is_zero:
                in_ideal = True
            elif out.certified:
                not_in_ideal = True
            else:
                notes.append("degree exceeds certified completion bound")

        if self.mode in ("oracle", "both"):
            slices = split_homogeneous(diff)
            high = [s for s in slices if s.degree > self.oracle_cap]
            if high and self.mode == "oracle":
                raise ValueError(
                    "slice of degree %d exceeds the oracle cap %d; "
                    "use the rewriting path"
                    % (max(s.degree for s in high), self.oracle_cap))
            checkable = [s for s in slices if s.degree <= self.oracle_cap]
            if high:
                notes.append("oracle skipped slices of degree > %d"
                             % self.oracle_cap)
            if checkable or not high:
                low_part = NcPoly(diff.alphabet,
                                  {w: c for s in checkable
                                   for w, c in s.vector.terms.items()})
                if randomized_precheck(low_part, self.relations,
                                       self.precheck_points, self.seed):
                    ok = all(self.oracle.slice_member(s) for s in checkable)
                else:
                    ok = False
                methods.append("oracle")
                if not ok:
                    not_in_ideal = True
                elif not high:
                    in_ideal = True
                if self.mode == "oracle":
                    residual = NcPoly.zero(diff.alphabet) if ok else diff

        if in_ideal and not_in_ideal:
            raise MethodDisagreement(
                "%s %s: rewrite and oracle disagree" % (identity, params))
        if not in_ideal and not not_in_ideal:
            notes.append("undecided: no method produced a definite verdict")

        millis = (time.perf_counter() - t0) * 1000.0
        return VerificationReport(identity, tuple(params), in_ideal, residual,
                                  tuple(methods), millis, tuple(notes))

    @staticmethod
    def _expansion_report(identity, params, diff, t0, notes=()):
        millis = (time.perf_counter() - t0) * 1000.0
        return VerificationReport(identity, tuple(params), diff.is_zero, diff,
                                  ("expand",), millis, tuple(notes))

    # -- the identities ---------------------------------------------------------

    def check_telescoping(self, gen: str, lam: int, mu: int, nu: int) -> VerificationReport:
        """Window splitting holds identically, before any relations."""
        if not lam >= mu >= nu:
            raise ValueError("need lam >= mu >= nu")
        t0 = time.perf_counter()
        whole = qproduct(self.alphabet, gen, SpectralWindow(lam, nu))
        split = (qproduct(self.alphabet, gen, SpectralWindow(lam, mu))
                 * qproduct(self.alphabet, gen, SpectralWindow(mu, nu)))
        params = (("gen", gen), ("lam", lam), ("mu", mu), ("nu", nu))
        return self._expansion_report("telescoping", params, whole - split, t0)

    def check_factor_commutation(self, gen: str, lam: int, mu: int) -> VerificationReport:
        """Ascending and descending factor order agree in the free algebra."""
        t0 = time.perf_counter()
        fwd = qproduct(self.alphabet, gen, SpectralWindow(lam, mu))
        rev = NcPoly.unit(self.alphabet)
        x = NcPoly.generator(self.alphabet, gen)
        for j in range(lam - 1, mu - 1, -1):
            rev = rev * (NcPoly.unit(self.alphabet) - x.scale(q_power(j)))
        params = (("gen", gen), ("lam", lam), ("mu", mu))
        return self._expansion_report("factor-order", params, fwd - rev, t0)

    def check_lemma(self, mu: int, lam: int, ordering: str, n: int = 1) -> VerificationReport:
        """Ordered pair products match the mixed product with k and c."""
        w = SpectralWindow(lam, mu)
        lo, hi = "x%d" % n, "x%d" % (n + 1)
        if ordering == "x1_first":
            lhs = (qproduct(self.alphabet, lo, w)
                   * qproduct(self.alphabet, hi, w))
            rhs = lemma_product(self.alphabet, w, "lam", n)
        elif ordering == "x2_first":
            lhs = (qproduct(self.alphabet, hi, w)
                   * qproduct(self.alphabet, lo, w))
            rhs = lemma_product(self.alphabet, w, "mu", n)
        else:
            raise ValueError("ordering must be x1_first or x2_first")
        params = (("mu", mu), ("lam", lam), ("ordering", ordering), ("n", n))
        return self.decide("lemma", params, lhs - rhs)

    def check_central_c(self, element: str = "c", n: int = 1) -> VerificationReport:
        """The element commutes with both generators of its pair modulo the ideal.

        element="k" runs the same test on k, which must fail; it is the
        mutation control for this check.
        """
        t0 = time.perf_counter()
        build = {"c": c_element, "k": k_element}[element]
        z = build(self.alphabet, n)
        reports = []
        for g in ("x%d" % n, "x%d" % (n + 1)):
            x = NcPoly.generator(self.alphabet, g)
            reports.append(self.decide("central", (("element", element), ("with", g)),
                                       z * x - x * z))
        passed = all(r.passed for r in reports)
        residual = next((r.residual for r in reports if not r.residual.is_zero),
                        NcPoly.zero(self.alphabet))
        methods = reports[0].methods
        millis = (time.perf_counter() - t0) * 1000.0
        return VerificationReport("central", (("element", element), ("n", n)),
                                  passed, residual, methods, millis)

    def check_ayb(self, n: int, lam: int, mu: int, nu: int) -> VerificationReport:
        lhs, rhs = ayb_sides(self.alphabet, n, lam, mu, nu)
        params = (("n", n), ("lam", lam), ("mu", mu), ("nu", nu))
        return self.decide("ayb", params, lhs - rhs)

    def check_far_commutation(self, m: int, n: int, lam: int, mu: int) -> VerificationReport:
        if m != n and abs(m - n) < 2:
            raise ValueError("far commutation needs |m - n| >= 2")
        w = SpectralWindow(lam, mu)
        a = qproduct(self.alphabet, "x%d" % m, w)
        b = qproduct(self.alphabet, "x%d" % n, w)
        params = (("m", m), ("n", n), ("lam", lam), ("mu", mu))
        return self.decide("far", params, a * b - b * a)

    def check_qq(self, lam: int, mu: int, nu: int) -> VerificationReport:
        """Ordered products commute when their second windows coincide."""
        if lam < nu or mu < nu:
            raise ValueError("need lam, mu >= nu")
        qa = big_Q(self.alphabet, self.rank, SpectralWindow(lam, nu))
        qb = big_Q(self.alphabet, self.rank, SpectralWindow(mu, nu))
        params = (("rank", self.rank), ("lam", lam), ("mu", mu), ("nu", nu))
        return self.decide("qq", params, qa * qb - qb * qa)


# ---------------------------------------------------------------------------
# quantum-coordinate embedding checks (their own alphabet and rules)
# ---------------------------------------------------------------------------

_CHI_E_NOTE = ("assumes distant chi pairs commute and every chi commutes "
               "with every e")


class ChiEVerifier:
    """Checks that y_n = chi_n e_n satisfies the x-family relations."""

    def __init__(self, rank: int, completion_degree: int = 6,
                 oracle_cap: int = 8, mode: str = "both",
                 precheck_points: int = 2, seed: int = 0):
        self.rank = rank
        self.alphabet = chi_e_alphabet(rank)
        self.relations = chi_e_relations(self.alphabet)
        self.mode = mode
        self.oracle_cap = oracle_cap
        self.precheck_points = precheck_points
        self.seed = seed
        self._rules = complete(chi_e_rules(rank), completion_degree)
        self._oracle = None

    @property
    def rules(self):
        return self._rules

    def _y(self, i):
        return (NcPoly.generator(self.alphabet, "chi%d" % i)
                * NcPoly.generator(self.alphabet, "e%d" % i))

    def _decide(self, params, diff):
        t0 = time.perf_counter()
        methods = []
        in_ideal, not_in_ideal = False, False
        residual = diff
        if self.mode in ("rewrite", "both"):
            out = self._rules.reduce_flagged(diff)
            residual = out.poly
            methods.append("rewrite")
            if out.poly.is_zero:
                in_ideal = True
            elif out.certified:
                not_in_ideal = True
        if self.mode in ("oracle", "both"):
            if self._oracle is None:
                self._oracle = IdealOracle(self.alphabet, self.relations)
            slices = split_homogeneous(diff)
            if all(s.degree <= self.oracle_cap for s in slices):
                if randomized_precheck(diff, self.relations,
                                       self.precheck_points, self.seed):
                    ok = all(self._oracle.slice_member(s) for s in slices)
                else:
                    ok = False
                methods.append("oracle")
                if ok:
                    in_ideal = True
                else:
                    not_in_ideal = True
        if in_ideal and not_in_ideal:
            raise MethodDisagreement("chi-e %s: methods disagree" % (params,))
        millis = (time.perf_counter() - t0) * 1000.0
        return VerificationReport("chie", tuple(params), in_ideal, residual,
                                  tuple(methods), millis, (_CHI_E_NOTE,))

    def family_reports(self):
        """One report per relation family instance."""
        q1 = q_power(1)
        out = []
        for n in range(1, self.rank):
            a, b = self._y(n), self._y(n + 1)
            first = a * a * b + (b * a * a).scale(q1) - (a * b * a).scale(ONE + q1)
            second = a * b * b + (b * b * a).scale(q1) - (b * a * b).scale(ONE + q1)
            out.append(self._decide((("family", "serre1"), ("n", n)), first))
            out.append(self._decide((("family", "serre2"), ("n", n)), second))
        for m in range(1, self.rank + 1):
            for n in range(1, self.rank + 1):
                if m - n >= 2:
                    ym, yn = self._y(m), self._y(n)
                    out.append(self._decide((("family", "distant"),
                                             ("m", m), ("n", n)),
                                            ym * yn - yn * ym))
        return out


def check_chi_e(rank: int, **kwargs) -> VerificationReport:
    """All three x-relation families for y_n = chi_n e_n at this rank."""
    t0 = time.perf_counter()
    v = ChiEVerifier(rank, **kwargs)
    reports = v.family_reports()
    passed = all(r.passed for r in reports)
    residual = next((r.residual for r in reports if not r.residual.is_zero),
                    NcPoly.zero(v.alphabet))
    millis = (time.perf_counter() - t0) * 1000.0
    methods = reports[0].methods if reports else ("rewrite",)
    return VerificationReport("chie", (("rank", rank),), passed, residual,
                              methods, millis, (_CHI_E_NOTE,))


# ---------------------------------------------------------------------------
# default grids and completion-degree estimates, shared with the CLI
# ---------------------------------------------------------------------------

QQ_WINDOWS = {
    2: ((2, 1, 0), (3, 1, 0), (3, 2, 0), (3, 2, 1)),
    3: ((2, 1, 0),),
}


def qq_windows(rank: int, lambda_max: int = 3):
    """Q-commutativity grid: the pinned windows that fit under lambda_max."""
    pinned = [w for w in QQ_WINDOWS.get(rank, ((2, 1, 0),))
              if w[0] <= lambda_max]
    return tuple(pinned) if pinned else tuple(descending_triples(lambda_max))


def descending_triples(top: int):
    return [(lam, mu, nu)
            for lam in range(top + 1)
            for mu in range(lam + 1)
            for nu in range(mu + 1)]


def needed_completion_degree(suite: str, rank: int, lambda_max: int) -> int:
    """Largest polynomial degree a suite run will feed the reducer."""
    if suite in ("telescoping", "ratio"):
        return 0
    if suite == "central":
        return 3
    if suite in ("lemma", "ayb", "far"):
        return 2 * lambda_max
    if suite == "qq":
        return max(rank * (lam + mu)
                   for lam, mu, nu in qq_windows(rank, lambda_max))
    if suite == "chie":
        return 6
    if suite == "ayb-formal":
        return 4
    raise ValueError("unknown suite %r" % suite)
