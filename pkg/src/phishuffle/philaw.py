"""Letter-valued laws phi(y_i, y_j) = sum_k gamma_{i,j}^k y_k and their checks."""
from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

from .freealg import Poly
from .scalars import QQ, Ring
from .words import Alphabet


class TruncationWarning(UserWarning):
    """A term fell outside the declared truncation window and was dropped."""


class LawError(ValueError):
    pass


@dataclass
class CheckResult:
    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _letter_labels(alphabet: Alphabet) -> tuple:
    labels = []
    for n in alphabet.names:
        m = re.search(r"(\d+)$", n)
        if not m:
            raise LawError(f"letter {n!r} has no numeric index; indexed letters like y1, y2 are required")
        labels.append(int(m.group(1)))
    return tuple(labels)


@dataclass(eq=False)
class PhiLaw:
    """Sparse structure constants over a finite (possibly truncated) alphabet.

    ``gamma[(i, j)]`` maps output letter index ``k`` to ``gamma_{i,j}^k``; an
    absent key means ``phi(y_i, y_j) = 0``.  ``lost`` records the pairs whose
    value left the truncated alphabet.  ``rule`` optionally describes the
    untruncated family on integer labels, for the decomposition check.
    """

    alphabet: Alphabet
    ring: Ring = QQ
    gamma: dict = field(default_factory=dict)
    name: str = "custom"
    lost: frozenset = frozenset()
    rule: Optional[Callable[[int, int], dict]] = None
    q: object = None  # set for infiltration laws
    _product_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = len(self.alphabet)
        clean = {}
        for (i, j), out in self.gamma.items():
            if not (0 <= i < n and 0 <= j < n):
                raise LawError(f"gamma entry ({i}, {j}) outside the alphabet")
            row = {}
            for k, c in out.items():
                if not 0 <= k < n:
                    raise LawError(f"gamma output letter {k} outside the alphabet")
                c = self.ring.coerce(c)
                if c:
                    row[k] = c
            if row:
                clean[(i, j)] = row
        self.gamma = clean
        if self.lost:
            names = self.alphabet.names
            sample = ", ".join(f"({names[i]},{names[j]})" for i, j in sorted(self.lost)[:3])
            warnings.warn(f"{self.name}: {len(self.lost)} phi values leave the alphabet "
                          f"and are truncated, e.g. {sample}", TruncationWarning, stacklevel=3)

    def __call__(self, i: int, j: int) -> dict:
        return self.gamma.get((i, j), {})

    def phi_poly(self, i: int, j: int) -> Poly:
        return Poly({(k,): c for k, c in self(i, j).items()}, self.alphabet, self.ring)

    def gamma_coeff(self, i: int, j: int, k: int):
        return self(i, j).get(k, self.ring.zero)

    def preimages(self, k: int) -> dict:
        """``{(i, j): gamma_{i,j}^k}`` for the output letter ``k``."""
        out = {}
        for (i, j), row in self.gamma.items():
            c = row.get(k)
            if c:
                out[(i, j)] = c
        return out

    def extend(self, p: Poly, q: Poly) -> Poly:
        """Bilinear extension of phi to degree-one polynomials."""
        acc = Poly.zero(self.alphabet, self.ring)
        for (a,), ca in p.terms.items():
            for (b,), cb in q.terms.items():
                acc = acc + self.phi_poly(a, b).scale(ca * cb)
        return acc

    @property
    def is_zero(self) -> bool:
        return not self.gamma


# builtins

def _additive(alphabet: Alphabet, ring: Ring, coeff, name: str) -> PhiLaw:
    labels = _letter_labels(alphabet)
    pos = {lab: i for i, lab in enumerate(labels)}
    gamma, lost = {}, set()
    for i, li in enumerate(labels):
        for j, lj in enumerate(labels):
            k = pos.get(li + lj)
            if k is None:
                lost.add((i, j))
            else:
                gamma[(i, j)] = {k: coeff}
    c = ring.coerce(coeff)
    return PhiLaw(alphabet, ring, gamma, name, frozenset(lost), rule=lambda a, b: {a + b: c})


def builtin(name: str, params=(), alphabet: Optional[Alphabet] = None, ring: Ring = QQ,
            max_weight: Optional[int] = None) -> PhiLaw:
    """Named laws: ``shuffle``, ``stuffle``, ``qstuffle q``, ``mod2``, ``infiltration q``.

    Stuffle-type laws live on ``y1 < y2 < ...`` weighted by index; when no
    alphabet is given one is built up to ``max_weight``.
    """
    name = name.lower()
    params = list(params)
    if name == "shuffle":
        if alphabet is None:
            raise LawError("the shuffle law needs an explicit alphabet")
        return PhiLaw(alphabet, ring, {}, "shuffle")
    if name in ("stuffle", "qstuffle"):
        if alphabet is None:
            if max_weight is None:
                raise LawError(f"{name} needs an alphabet or a maximal weight")
            alphabet = Alphabet.indexed("y", 1, max_weight)
        if name == "stuffle":
            return _additive(alphabet, ring, 1, "stuffle")
        if len(params) != 1:
            raise LawError("qstuffle takes one parameter q")
        q = ring.parse(str(params[0])) if isinstance(params[0], str) else ring.coerce(params[0])
        return _additive(alphabet, ring, q, f"qstuffle {ring.format(q)}")
    if name == "mod2":
        if alphabet is None:
            alphabet = Alphabet(("y0", "y1"))
        labels = _letter_labels(alphabet)
        if sorted(labels) != [0, 1]:
            raise LawError("mod2 is defined on the alphabet {y0, y1}")
        pos = {lab: i for i, lab in enumerate(labels)}
        gamma = {(pos[a], pos[b]): {pos[(a + b) % 2]: 1} for a in (0, 1) for b in (0, 1)}
        return PhiLaw(alphabet, ring, gamma, "mod2")
    if name == "infiltration":
        if alphabet is None:
            raise LawError("the infiltration law needs an explicit alphabet")
        if len(params) != 1:
            raise LawError("infiltration takes one parameter q")
        q = ring.parse(str(params[0])) if isinstance(params[0], str) else ring.coerce(params[0])
        gamma = {(i, i): {i: q} for i in range(len(alphabet))}
        return PhiLaw(alphabet, ring, gamma, f"infiltration {ring.format(q)}", q=q)
    raise LawError(f"unknown builtin law {name!r}")


def from_family(rule: Callable[[int, int], dict], alphabet: Alphabet, ring: Ring = QQ,
                name: str = "family") -> PhiLaw:
    """Restrict a law given on integer labels to an indexed alphabet."""
    labels = _letter_labels(alphabet)
    pos = {lab: i for i, lab in enumerate(labels)}
    gamma, lost = {}, set()
    for i, li in enumerate(labels):
        for j, lj in enumerate(labels):
            row = {}
            for k, c in rule(li, lj).items():
                if k in pos:
                    row[pos[k]] = c
                elif c:
                    lost.add((i, j))
            if row:
                gamma[(i, j)] = row
    return PhiLaw(alphabet, ring, gamma, name, frozenset(lost), rule=rule)


# decision procedures

def check_commutative(phi: PhiLaw) -> CheckResult:
    n = len(phi.alphabet)
    for i in range(n):
        for j in range(i + 1, n):
            if phi(i, j) != phi(j, i):
                return CheckResult(False, (i, j), "gamma_{i,j} != gamma_{j,i}")
    return CheckResult(True)


def check_associative(phi: PhiLaw) -> CheckResult:
    n = len(phi.alphabet)
    letter = lambda i: Poly({(i,): 1}, phi.alphabet, phi.ring)
    for i, j, k in itertools.product(range(n), repeat=3):
        left = phi.extend(phi.phi_poly(i, j), letter(k))
        right = phi.extend(letter(i), phi.phi_poly(j, k))
        if left != right:
            return CheckResult(False, (i, j, k), f"phi(phi(i,j),k) = {left} but phi(i,phi(j,k)) = {right}")
    return CheckResult(True)


def check_condition_D(phi: PhiLaw, horizon: Optional[int] = None) -> CheckResult:
    """Finite decomposition of every output letter.

    A finite table always passes.  For a law declared by a rule on integer
    labels, pairs up to ``horizon`` (default: twice the largest label plus 4)
    are probed; a pair outside the truncation hitting a letter inside it
    means that letter's preimage is not enumerable within the window.
    """
    if phi.rule is None:
        return CheckResult(True)
    labels = _letter_labels(phi.alphabet)
    inside = set(labels)
    top = max(labels)
    horizon = horizon or 2 * top + 4
    lo = min(labels)
    for z in sorted(inside):
        for a in range(lo, horizon + 1):
            for b in range(lo, horizon + 1):
                if a in inside and b in inside:
                    continue
                if phi.rule(a, b).get(z):
                    return CheckResult(False, (z,), f"pair ({a},{b}) outside the window maps to letter {z}")
    return CheckResult(True)


def check_grading_compatible(phi: PhiLaw) -> CheckResult:
    """Every gamma_{i,j}^k != 0 needs weight(i) + weight(j) <= weight(k).

    With positive weights this makes both legs of each reduced coproduct term
    strictly lighter than the letter, so (I+)^{*n} vanishes above the weight.
    """
    wt = phi.alphabet.letter_weight
    for (i, j), row in sorted(phi.gamma.items()):
        for k in sorted(row):
            if wt(i) + wt(j) > wt(k):
                return CheckResult(False, (i, j, k),
                                   f"weight({i})+weight({j}) = {wt(i) + wt(j)} > weight({k}) = {wt(k)}")
    return CheckResult(True)


# config files

def parse_law_text(text: str, ring: Ring = QQ, alphabet: Optional[Alphabet] = None,
                   max_weight: Optional[int] = None) -> PhiLaw:
    """Read a law file.

    Lines: ``alphabet: a b c`` (or ``alphabet: y1..y8 weights 1..8``), then
    either ``builtin: <name> [param]`` or ``gamma i j k coeff`` entries with
    letters given by name.  ``#`` starts a comment.
    """
    builtin_line = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() == "alphabet":
            alphabet = Alphabet.of(rest)
        elif sep and key.strip() == "builtin":
            builtin_line = rest.split()
        elif line.startswith("gamma"):
            parts = line.split()
            if len(parts) != 5:
                raise LawError(f"line {lineno}: expected 'gamma i j k coeff'")
            entries.append((lineno, parts[1:]))
        else:
            raise LawError(f"line {lineno}: cannot parse {raw!r}")
    if builtin_line is not None:
        if entries:
            raise LawError("a law file has either a builtin line or gamma entries, not both")
        return builtin(builtin_line[0], builtin_line[1:], alphabet, ring, max_weight)
    if alphabet is None:
        raise LawError("law file needs an 'alphabet:' header")
    gamma: dict = {}
    for lineno, (i, j, k, c) in entries:
        try:
            ii, jj, kk = (alphabet.index(x) for x in (i, j, k))
        except KeyError as e:
            raise LawError(f"line {lineno}: {e}") from None
        row = gamma.setdefault((ii, jj), {})
        row[kk] = row.get(kk, ring.zero) + ring.parse(c)
    return PhiLaw(alphabet, ring, gamma, "file")


def parse_law_spec(spec: str, ring: Ring = QQ, alphabet: Optional[Alphabet] = None,
                   max_weight: Optional[int] = None) -> PhiLaw:
    """``builtin:stuffle``, ``builtin:qstuffle 3`` or a path to a law file."""
    if spec.startswith("builtin:"):
        parts = spec[len("builtin:"):].split()
        if not parts:
            raise LawError("empty builtin law name")
        return builtin(parts[0], parts[1:], alphabet, ring, max_weight)
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as e:
        raise LawError(f"cannot read law file {spec!r}: {e.strerror}") from None
    return parse_law_text(text, ring, alphabet, max_weight)


def format_law(phi: PhiLaw) -> str:
    names = phi.alphabet.names
    lines = [f"alphabet: {phi.alphabet}"]
    for (i, j), row in sorted(phi.gamma.items()):
        for k, c in sorted(row.items()):
            lines.append(f"gamma {names[i]} {names[j]} {names[k]} {phi.ring.format(c)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "PhiLaw", "CheckResult", "LawError", "TruncationWarning", "builtin", "from_family",
    "check_commutative", "check_associative", "check_condition_D", "check_grading_compatible",
    "parse_law_text", "parse_law_spec", "format_law",
]
