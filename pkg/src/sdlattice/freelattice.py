"""Terms of the free lattice: parsing, Whitman's order test, canonical forms.

Terms are interned, so structurally equal terms are the same object and
the order test can memoize on identity pairs.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import GeneratorCollision, NotAnInterval, TermSyntaxError
from .lattice import FiniteLattice, from_covers, is_isomorphic

_NAME = re.compile(r"[a-z][a-z0-9]*\Z")
_INTERN: dict = {}


class FreeTerm:
    """Base class of :class:`Generator`, :class:`Join` and :class:`Meet`."""

    __slots__ = ("name", "args", "_key")
    op = ""

    def __new__(cls, *parts):
        key = cls._key_of(parts)
        term = _INTERN.get(key)
        if term is None:
            term = object.__new__(cls)
            cls._init(term, parts)
            term._key = key
            _INTERN[key] = term
        return term

    def __reduce__(self):
        return (type(self), (self.name,) if self.op == "gen" else tuple(self.args))

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def __str__(self):
        return _show(self, top=True)

    def generators(self) -> frozenset:
        if self.op == "gen":
            return frozenset({self.name})
        return frozenset().union(*(a.generators() for a in self.args))

    def __add__(self, other):
        return join(self, other)

    def __mul__(self, other):
        return meet(self, other)


class Generator(FreeTerm):
    __slots__ = ()
    op = "gen"

    @staticmethod
    def _key_of(parts):
        (name,) = parts
        if not isinstance(name, str) or not _NAME.match(name):
            raise ValueError(f"bad generator name {name!r}")
        return ("gen", name)

    @staticmethod
    def _init(term, parts):
        term.name = parts[0]
        term.args = ()


class _Op(FreeTerm):
    __slots__ = ()

    @classmethod
    def _key_of(cls, parts):
        if len(parts) < 2:
            raise ValueError(f"{cls.__name__} needs at least two arguments")
        if not all(isinstance(p, FreeTerm) for p in parts):
            raise TypeError("arguments must be terms")
        return (cls.op, tuple(id(p) for p in parts))

    @staticmethod
    def _init(term, parts):
        term.name = None
        term.args = tuple(parts)


class Join(_Op):
    __slots__ = ()
    op = "join"


class Meet(_Op):
    __slots__ = ()
    op = "meet"


def _flat(cls, terms):
    out = []
    for t in terms:
        out.extend(t.args if type(t) is cls else (t,))
    return out


def join(*terms) -> FreeTerm:
    """n-ary join with nested joins flattened; a single term is returned as is."""
    args = _flat(Join, terms)
    return args[0] if len(args) == 1 else Join(*args)


def meet(*terms) -> FreeTerm:
    args = _flat(Meet, terms)
    return args[0] if len(args) == 1 else Meet(*args)


def _short_names(t):
    return all(re.fullmatch(r"[a-z][0-9]*", g) for g in t.generators())


def _show(t, top=False):
    if t.op == "gen":
        return t.name
    if t.op == "join":
        s = " + ".join(_show(a) for a in t.args)
        return s if top else f"({s})"
    sep = "" if _short_names(t) else "*"
    return sep.join(_show(a) for a in t.args)


# parsing ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([a-z][0-9]*)|(.))")


def _tokens(s):
    pos = 0
    out = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m.end() == pos or (m.group(1) is None and m.group(2) is None):
            break
        out.append((m.group(1) or m.group(2), m.start(m.lastindex), m.group(1) is not None))
        pos = m.end()
    return out


def parse_term(s: str) -> FreeTerm:
    """Parse ``+`` (join), ``*`` or juxtaposition (meet) and parentheses.

    A generator token is one lowercase letter followed by optional digits,
    so ``bc`` reads as the meet of ``b`` and ``c``.
    """
    toks = _tokens(s)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def fail(msg):
        where = toks[pos][1] if pos < len(toks) else len(s)
        raise TermSyntaxError(msg, where)

    def sum_():
        nonlocal pos
        parts = [prod()]
        while peek() and peek()[0] == "+":
            pos += 1
            parts.append(prod())
        return join(*parts)

    def prod():
        nonlocal pos
        parts = [atom()]
        while True:
            t = peek()
            if t and t[0] == "*":
                pos += 1
                parts.append(atom())
            elif t and (t[2] or t[0] == "("):
                parts.append(atom())
            else:
                return meet(*parts)

    def atom():
        nonlocal pos
        t = peek()
        if t is None:
            fail("unexpected end of term")
        if t[2]:
            pos += 1
            return Generator(t[0])
        if t[0] == "(":
            pos += 1
            inner = sum_()
            if not peek() or peek()[0] != ")":
                fail("expected ')'")
            pos += 1
            return inner
        fail(f"unexpected {t[0]!r}")

    if not toks:
        raise TermSyntaxError("empty term", 0)
    term = sum_()
    if pos != len(toks):
        fail(f"unexpected {toks[pos][0]!r}")
    return term


def as_term(t) -> FreeTerm:
    return t if isinstance(t, FreeTerm) else parse_term(t)


# order ------------------------------------------------------------------------

_LEQ: dict = {}


def leq_free(s, t) -> bool:
    """``s <= t`` in the free lattice, by Whitman's recursion."""
    s, t = as_term(s), as_term(t)
    return _leq(s, t)


def _leq(s, t):
    if s is t:
        return True
    key = (id(s), id(t))
    hit = _LEQ.get(key)
    if hit is not None:
        return hit
    if s.op == "join":
        r = all(_leq(a, t) for a in s.args)
    elif t.op == "meet":
        r = all(_leq(s, b) for b in t.args)
    elif s.op == "gen":
        r = t.op == "join" and any(_leq(s, b) for b in t.args)
    elif t.op == "gen":
        r = any(_leq(a, t) for a in s.args)
    else:
        # meet below join: Whitman's condition
        r = any(_leq(a, t) for a in s.args) or any(_leq(s, b) for b in t.args)
    _LEQ[key] = r
    return r


def eq_free(s, t) -> bool:
    s, t = as_term(s), as_term(t)
    return _leq(s, t) and _leq(t, s)


def canonical_form(t) -> FreeTerm:
    """Flatten, drop redundant joinands / meetands, and sort arguments."""
    t = as_term(t)
    if t.op == "gen":
        return t
    cls, build = (Join, join) if t.op == "join" else (Meet, meet)
    args = _flat(cls, [canonical_form(a) for a in t.args])
    uniq = sorted(set(args), key=_order_key)
    kept = list(uniq)
    # a term not redundant now stays so as ``kept`` shrinks, hence one pass
    for a in uniq:
        others = [b for b in kept if b is not a]
        if not others:
            break
        rest = build(*others)
        redundant = _leq(a, rest) if t.op == "join" else _leq(rest, a)
        if redundant:
            kept = others
    return build(*sorted(kept, key=_order_key))


def _order_key(t):
    return (str(t), t.op)


def insert_generator(alpha, beta, w, side: str = "join") -> FreeTerm:
    """``alpha + w beta`` (``side="join"``) or ``(alpha + w) beta`` (``"meet"``)."""
    alpha, beta = as_term(alpha), as_term(beta)
    w = w if isinstance(w, FreeTerm) else Generator(w)
    if w.op != "gen":
        raise ValueError("w must be a generator")
    if w.name in alpha.generators() | beta.generators():
        raise GeneratorCollision(f"{w.name} already occurs in the interval bounds")
    if not _leq(alpha, beta):
        raise NotAnInterval(f"{alpha} is not below {beta}")
    if side == "join":
        return join(alpha, meet(w, beta))
    if side == "meet":
        return meet(join(alpha, w), beta)
    raise ValueError("side must be 'join' or 'meet'")


def random_term(rng: random.Random, depth: int, gens=("a", "b", "c", "d")) -> FreeTerm:
    """A random term of depth at most ``depth`` over ``gens``."""
    if depth <= 0 or rng.random() < 0.25:
        return Generator(rng.choice(gens))
    k = rng.choice((2, 2, 3))
    args = [random_term(rng, depth - 1, gens) for _ in range(k)]
    return (Join if rng.random() < 0.5 else Meet)(*args)


# the snake S0 as a sublattice -------------------------------------------------

_S0_TERMS = {
    "1": "a + (a(b+c) + bc + x)(b + c)",
    "b3": "a + bc",
    "a3": "(a(b+c) + bc + x)(b + c) + (a + bc)(b + c)y",
    "a2": "(a(b+c) + bc + x)(b + c)",
    "A": "(a + bc)((a(b+c) + bc + x)(b+c) + (a+bc)(b+c)y)",
    "B": "(a(b+c) + bc + x)(a + bc)(b + c) + (a + bc)(b + c)y",
    "C": "(a(b+c) + bc + x)(a + bc)(b + c)",
    "D": "(a + bc)(b+c)y + a(b + c) + bc",
    "E": "((a + bc)(b+c)y + a(b+c) + bc)(a(b+c) + bc + x)",
    "F": "a(b+c) + ((a + bc)(b+c)y + bc)(a(b+c) + bc + x)",
    "b2": "(a+bc)(b+c)y + bc",
    "b1": "((a + bc)(b + c)y + bc)(a(b+c) + bc + x)",
    "a1": "a(b + c)",
    "0": "a((a + bc)(b + c)y + bc)",
    "c": "a",
}

_PENTAGON_TERMS = {
    "0": "a(b + c)",
    "1": "a(b + c) + bc",
    "2": "(a + bc)(b + c)",
    "3": "a",
    "4": "a + bc",
}


def s0_terms() -> dict:
    """Label -> term for the snake ``S0`` inside the free lattice on a, b, c, x, y."""
    return {k: parse_term(v) for k, v in _S0_TERMS.items()}


def pentagon_terms() -> dict:
    """The five-term copy of ``N5``, labeled like :func:`constructions.pentagon`."""
    return {k: parse_term(v) for k, v in _PENTAGON_TERMS.items()}


def s0_identities() -> dict:
    """The intermediate identities of the construction, checked by ``eq_free``."""
    T = s0_terms()
    N5_mid = parse_term("(a + bc)(b + c)")
    low = parse_term("a(b+c) + bc")
    return {
        "C = a2 (a+bc)(b+c)": eq_free(T["C"], meet(T["a2"], N5_mid)),
        "D = b2 + a(b+c) + bc": eq_free(T["D"], join(T["b2"], low)),
        "B = C + b2": eq_free(T["B"], join(T["C"], T["b2"])),
        "E = a2 D": eq_free(T["E"], meet(T["a2"], T["D"])),
        "a3 = a2 + b2": eq_free(T["a3"], join(T["a2"], T["b2"])),
        "b1 = a2 b2": eq_free(T["b1"], meet(T["a2"], T["b2"])),
    }


@dataclass
class EmbeddingVerdict:
    ok: bool
    closed: bool
    isomorphic: bool
    labels_match: Optional[bool]
    closure_failures: list = field(default_factory=list)
    duplicates: list = field(default_factory=list)
    order_mismatches: list = field(default_factory=list)
    leq_pairs_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "closed": self.closed,
            "isomorphic": self.isomorphic,
            "labels_match": self.labels_match,
            "closure_failures": [list(f) for f in self.closure_failures],
            "duplicates": [list(d) for d in self.duplicates],
            "order_mismatches": [list(m) for m in self.order_mismatches],
        }


def verify_embedding(table: dict, target: FiniteLattice) -> EmbeddingVerdict:
    """Check that ``table`` is closed under join and meet and orders like ``target``.

    Labels that name elements of ``target`` are compared element by
    element; the abstract isomorphism test is run in any case.
    """
    labels = list(table)
    terms = [as_term(table[k]) for k in labels]
    n = len(labels)
    le = [[_leq(s, t) for t in terms] for s in terms]
    duplicates = [(labels[i], labels[j]) for i, j in combinations(range(n), 2) if le[i][j] and le[j][i]]

    failures = []
    for i, j in combinations(range(n), 2):
        for op, build in (("+", join), ("*", meet)):
            u = build(terms[i], terms[j])
            if not any(eq_free(u, t) for t in terms):
                failures.append((labels[i], op, labels[j], str(canonical_form(u))))

    mismatches = []
    labels_match = None
    target_names = {target.name(x) for x in range(target.size)}
    if set(labels) == target_names:
        idx = [target.index(k) for k in labels]
        for i in range(n):
            for j in range(n):
                if le[i][j] != target.le(idx[i], idx[j]):
                    mismatches.append((labels[i], labels[j], le[i][j]))
        labels_match = not mismatches

    iso = False
    if not duplicates and n == target.size:
        covers = [
            (i, j) for i in range(n) for j in range(n)
            if i != j and le[i][j]
            and not any(k not in (i, j) and le[i][k] and le[k][j] for k in range(n))
        ]
        try:
            P = from_covers(n, covers, labels)
        except Exception:
            P = None
        iso = P is not None and is_isomorphic(P, target) is not None

    closed = not failures
    ok = closed and iso and labels_match is not False
    return EmbeddingVerdict(ok, closed, iso, labels_match, failures, duplicates, mismatches, n * n)
