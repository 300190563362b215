"""Free associative algebra over Q(s) and the elements under study.

Words are tuples of letter indices into an Alphabet; polynomials are
sparse maps word -> coefficient.  The constructors at the bottom build
the finite q-products, the k and c elements, the ordered Q-operator
products and the two sides of the braid-type exchange relation exactly
as free-algebra elements, before any relations are imposed.

Coefficients are QRat by default but any commutative ring element with
+, -, * and truthiness works (the series layer uses polynomials in
central parameters).
"""

from __future__ import annotations

from dataclasses import dataclass

from qserre.qfield import ONE, QRat, ZERO, q_power, s_power


class Alphabet:
    """Ordered families of generators, e.g. x1..xr or chi1..chir, e1..er.

    The letter order (family by family, then index) is also the default
    precedence for the deg-lex monomial order downstream.
    """

    __slots__ = ("families", "letters", "_index")

    def __init__(self, families):
        families = tuple((str(name), int(count)) for name, count in families)
        letters = []
        for name, count in families:
            if count < 1:
                raise ValueError("family %r needs rank >= 1" % name)
            letters.extend("%s%d" % (name, i) for i in range(1, count + 1))
        if len(set(letters)) != len(letters):
            raise ValueError("duplicate letter names")
        object.__setattr__(self, "families", families)
        object.__setattr__(self, "letters", tuple(letters))
        object.__setattr__(self, "_index", {ell: i for i, ell in enumerate(letters)})

    def __setattr__(self, *a):
        raise AttributeError("Alphabet is immutable")

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.families == other.families

    def __hash__(self):
        return hash(self.families)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return "Alphabet(%r)" % (self.families,)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("no letter %r in %r" % (name, self)) from None

    def name(self, i: int) -> str:
        return self.letters[i]

    def word_str(self, word) -> str:
        return " ".join(self.letters[i] for i in word)


def x_alphabet(rank: int) -> Alphabet:
    return Alphabet([("x", rank)])


def chi_e_alphabet(rank: int) -> Alphabet:
    # chi's precede e's so the cross rule e*chi -> chi*e is oriented
    return Alphabet([("chi", rank), ("e", rank)])


@dataclass(frozen=True)
class SpectralWindow:
    """Integer window (lam, mu) with lam >= mu; the product runs j = mu..lam-1."""

    lam: int
    mu: int

    def __post_init__(self):
        if self.lam < self.mu:
            raise ValueError("window needs lam >= mu, got (%d, %d)"
                             % (self.lam, self.mu))

    @property
    def width(self) -> int:
        return self.lam - self.mu


def _word_key(word):
    return (len(word), word)


class NcPoly:
    """Element of the free algebra: finite map word -> coefficient."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms=None):
        object.__setattr__(self, "alphabet", alphabet)
        clean = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                w = tuple(w)
                c0 = clean.get(w)
                c = c if c0 is None else c0 + c
                if c:
                    clean[w] = c
                elif w in clean:
                    del clean[w]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("NcPoly is immutable; build new values")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def unit(cls, alphabet, coeff=ONE):
        return cls(alphabet, {(): coeff})

    @classmethod
    def generator(cls, alphabet, name, coeff=ONE):
        return cls(alphabet, {(alphabet.index(name),): coeff})

    @classmethod
    def monomial(cls, alphabet, word, coeff=ONE):
        return cls(alphabet, {tuple(word): coeff})

    # -- structure ------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        """Max word length in the support; None for the zero polynomial."""
        return max(map(len, self.terms)) if self.terms else None

    def coefficient(self, word) -> QRat:
        return self.terms.get(tuple(word), ZERO)

    def homogeneous_part(self, d: int) -> "NcPoly":
        return NcPoly(self.alphabet,
                      {w: c for w, c in self.terms.items() if len(w) == d})

    def map_coefficients(self, f) -> "NcPoly":
        return NcPoly(self.alphabet,
                      [(w, f(c)) for w, c in self.terms.items()])

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch: %r vs %r"
                             % (self.alphabet, other.alphabet))

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            c0 = out.get(w)
            c = c if c0 is None else c0 + c
            if c:
                out[w] = c
            elif w in out:
                del out[w]
        p = object.__new__(NcPoly)
        object.__setattr__(p, "alphabet", self.alphabet)
        object.__setattr__(p, "terms", out)
        return p

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            return self.scale(other)
        self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                c0 = out.get(w)
                c = c if c0 is None else c0 + c
                if c:
                    out[w] = c
                elif w in out:
                    del out[w]
        p = object.__new__(NcPoly)
        object.__setattr__(p, "alphabet", self.alphabet)
        object.__setattr__(p, "terms", out)
        return p

    def __rmul__(self, other):
        # scalars commute with everything, so this covers scalar * poly
        return self.scale(other)

    def scale(self, c) -> "NcPoly":
        if isinstance(c, int):
            c = QRat(c)
        if not c:
            return NcPoly(self.alphabet)
        return self.map_coefficients(lambda x: c * x)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in the free algebra")
        out = NcPoly.unit(self.alphabet)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, NcPoly) and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    # -- display --------------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending deg-lex order of words."""
        return sorted(self.terms.items(), key=lambda t: _word_key(t[0]),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for w, c in self.sorted_terms():
            neg = getattr(c, "is_negative", False)
            if neg:
                c = -c
            cs = str(c)
            if any(ch in cs for ch in "+-*/ ") and not cs.lstrip("-").isdigit():
                cs = "(%s)" % cs
            if not w:
                body = cs
            elif cs == "1":
                body = self.alphabet.word_str(w)
            else:
                body = "%s*%s" % (cs, self.alphabet.word_str(w))
            if not chunks:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append((" - " if neg else " + ") + body)
        return "".join(chunks)

    def __repr__(self):
        return "<NcPoly %s>" % self


def nc_arith(p: NcPoly, r, op: str) -> NcPoly:
    """Free-algebra arithmetic dispatch: add/sub/mul/scalar_mul."""
    if op == "add":
        return p + r
    if op == "sub":
        return p - r
    if op == "mul":
        return p * r
    if op == "scalar_mul":
        return p.scale(r)
    raise ValueError("unknown op %r" % op)


# ---------------------------------------------------------------------------
# the elements of interest
# ---------------------------------------------------------------------------

def qproduct(alphabet: Alphabet, gen: str, window: SpectralWindow) -> NcPoly:
    """Finite q-product for one generator: prod_{j=mu}^{lam-1} (1 - gen q^j).

    Factors are laid out with ascending j left-to-right; for a single
    letter they commute, so the order is immaterial.
    """
    x = NcPoly.generator(alphabet, gen)
    out = NcPoly.unit(alphabet)
    for j in range(window.mu, window.lam):
        out = out * (NcPoly.unit(alphabet) - x.scale(q_power(j)))
    return out


def _adjacent_pair(alphabet, n):
    lo = NcPoly.generator(alphabet, "x%d" % n)
    hi = NcPoly.generator(alphabet, "x%d" % (n + 1))
    return lo, hi


def k_element(alphabet: Alphabet, n: int = 1) -> NcPoly:
    """k = (x_n x_{n+1} - x_{n+1} x_n) / (1 - q) for the adjacent pair at n."""
    lo, hi = _adjacent_pair(alphabet, n)
    return (lo * hi - hi * lo).scale(ONE / (ONE - q_power(1)))


def c_element(alphabet: Alphabet, n: int = 1) -> NcPoly:
    """c = (x_n x_{n+1} - x_{n+1} x_n q) / (1 - q); central modulo the ideal."""
    lo, hi = _adjacent_pair(alphabet, n)
    return (lo * hi - (hi * lo).scale(q_power(1))).scale(ONE / (ONE - q_power(1)))


def lemma_product(alphabet: Alphabet, window: SpectralWindow,
                  exponent_choice: str, n: int = 1) -> NcPoly:
    """prod_{j=mu}^{lam-1} (1 + c q^{2j} - (x_n + x_{n+1} + k q^e) q^j).

    exponent_choice picks e: "lam" matches the x_n-first ordered product,
    "mu" the x_{n+1}-first one.  Factors ascend in j left-to-right; they
    only commute modulo the ideal, so this order is normative.
    """
    if exponent_choice == "lam":
        e = window.lam
    elif exponent_choice == "mu":
        e = window.mu
    else:
        raise ValueError("exponent_choice must be 'lam' or 'mu'")
    lo, hi = _adjacent_pair(alphabet, n)
    k = k_element(alphabet, n)
    c = c_element(alphabet, n)
    core = lo + hi + k.scale(q_power(e))
    out = NcPoly.unit(alphabet)
    for j in range(window.mu, window.lam):
        out = out * (NcPoly.unit(alphabet)
                     + c.scale(q_power(2 * j))
                     - core.scale(q_power(j)))
    return out


def big_Q(alphabet: Alphabet, rank: int, window: SpectralWindow) -> NcPoly:
    """Ordered product of q-products, highest generator index leftmost."""
    if rank < 1 or rank > len(alphabet):
        raise ValueError("rank %d out of range for %r" % (rank, alphabet))
    out = NcPoly.unit(alphabet)
    for i in range(rank, 0, -1):
        out = out * qproduct(alphabet, "x%d" % i, window)
    return out


def ayb_sides(alphabet: Alphabet, n: int, lam: int, mu: int, nu: int):
    """Both sides of the braid-type exchange for the pair (x_n, x_{n+1}).

    Needs lam >= mu >= nu.  The two sides agree only modulo the ideal.
    """
    if not lam >= mu >= nu:
        raise ValueError("need lam >= mu >= nu, got (%d, %d, %d)" % (lam, mu, nu))
    lo, hi = "x%d" % n, "x%d" % (n + 1)
    lhs = (qproduct(alphabet, hi, SpectralWindow(lam, mu))
           * qproduct(alphabet, lo, SpectralWindow(lam, nu))
           * qproduct(alphabet, hi, SpectralWindow(mu, nu)))
    rhs = (qproduct(alphabet, lo, SpectralWindow(mu, nu))
           * qproduct(alphabet, hi, SpectralWindow(lam, nu))
           * qproduct(alphabet, lo, SpectralWindow(lam, mu)))
    return lhs, rhs


# ---------------------------------------------------------------------------
# defining relations (the input both the rewriter and the oracle start from)
# ---------------------------------------------------------------------------

def serre_relations(alphabet: Alphabet) -> list:
    """Cubic relations and distant commutations for the x-family.

    Each cubic one reads  x_n x_n x_{n+1} + x_{n+1} x_n x_n q
    - x_n x_{n+1} x_n (1+q)  and its mirror; letters at distance >= 2
    commute.
    """
    rank = len(alphabet)
    q1 = q_power(1)
    rels = []
    for n in range(1, rank):
        a = NcPoly.generator(alphabet, "x%d" % n)
        b = NcPoly.generator(alphabet, "x%d" % (n + 1))
        rels.append(a * a * b + (b * a * a).scale(q1)
                    - (a * b * a).scale(ONE + q1))
        rels.append(a * b * b + (b * b * a).scale(q1)
                    - (b * a * b).scale(ONE + q1))
    for m in range(3, rank + 1):
        for n in range(1, m - 1):
            xm = NcPoly.generator(alphabet, "x%d" % m)
            xn = NcPoly.generator(alphabet, "x%d" % n)
            rels.append(xm * xn - xn * xm)
    return rels


def chi_e_relations(alphabet: Alphabet) -> list:
    """Defining relations of the quantum-coordinate realization.

    e-family: the cubic relations with coefficient q^(1/2) + q^(-1/2) and
    distant commutation; chi-family: adjacent reordering with a q^(1/2)
    and distant commutation; every chi commutes with every e.
    """
    rank = len(alphabet) // 2
    rels = []
    coeff = s_power(1) + s_power(-1)
    for n in range(1, rank):
        a = NcPoly.generator(alphabet, "e%d" % n)
        b = NcPoly.generator(alphabet, "e%d" % (n + 1))
        rels.append(a * a * b + b * a * a - (a * b * a).scale(coeff))
        rels.append(a * b * b + b * b * a - (b * a * b).scale(coeff))
        lo = NcPoly.generator(alphabet, "chi%d" % n)
        hi = NcPoly.generator(alphabet, "chi%d" % (n + 1))
        rels.append(lo * hi - (hi * lo).scale(s_power(1)))
    for m in range(3, rank + 1):
        for n in range(1, m - 1):
            em = NcPoly.generator(alphabet, "e%d" % m)
            en = NcPoly.generator(alphabet, "e%d" % n)
            rels.append(em * en - en * em)
            cm = NcPoly.generator(alphabet, "chi%d" % m)
            cn = NcPoly.generator(alphabet, "chi%d" % n)
            rels.append(cm * cn - cn * cm)
    for m in range(1, rank + 1):
        for n in range(1, rank + 1):
            em = NcPoly.generator(alphabet, "e%d" % m)
            cn = NcPoly.generator(alphabet, "chi%d" % n)
            rels.append(em * cn - cn * em)
    return rels
