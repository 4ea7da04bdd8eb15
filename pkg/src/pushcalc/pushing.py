"""Point-pushing classes for punctured one-vertex manifold models.

A ManifoldModel is the combinatorial shadow of a manifold with one
0-cell, g loops and g top-dimensional-boundary cells: an orientation
character on the loops plus, per loop, the ordered list of cells the
loop crosses, each crossing carrying a sign and the loop prefix read
before the crossing.  The default model has loop i crossing cell i
exactly once, positively, with empty prefix.

Pushing a puncture around a loop word acts on the homotopy classes of
self-maps of the punctured model (a wedge of g circles, g cells and k
puncture spheres).  The letterwise rules live in push_letter; push_word
folds them by composition with the first letter outermost; the closed
form push_word_closed evaluates the same class directly from letter
profiles and is only valid for the default model.  Braids combine k
slot words and a permutation of the punctures; push_braid is a monoid
homomorphism from braids (under braid_mul) to self-map classes, is
injective, and recover_braid inverts it with a full round-trip check.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass

from .errors import (
    ModelNotDefault,
    ParseError,
    SignatureMismatch,
    SizeMismatch,
    SlotOutOfRange,
)
from .monoid import SelfMapClass, WedgeSignature, compose, identity_map
from .ring import ModuleVec, RingElem, SphereLabel
from .words import (
    FreeEndo,
    FreeWord,
    char_sign,
    enumerate_words,
    format_word,
    letter_profile,
    parse_word,
)


@dataclass(frozen=True)
class ManifoldModel:
    """Loops, orientation character, and loop-cell crossing data.

    crossings[i-1] lists the crossings of loop i as (cell, sign, prefix)
    triples with 1-based cell indices.  low_handle_dim declares that the
    model's handle dimension is small enough for the orbit-counting
    module's hypotheses; the default models have maximal handle dimension,
    so it is False for them and the orbit ops refuse unless forced.
    """

    g: int
    d: int
    character: tuple[int, ...]
    crossings: tuple[tuple[tuple[int, int, FreeWord], ...], ...]
    low_handle_dim: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.g, int) or self.g < 0:
            raise ValueError(f"loop count must be a non-negative int, got {self.g!r}")
        if not isinstance(self.d, int) or self.d < 3:
            raise ValueError(f"dimension must be an int >= 3, got {self.d!r}")
        if len(self.character) != self.g:
            raise ValueError(
                f"character has {len(self.character)} signs, expected {self.g}"
            )
        for c in self.character:
            if c not in (1, -1):
                raise ValueError(f"character signs must be +1 or -1, got {c!r}")
        if len(self.crossings) != self.g:
            raise ValueError(
                f"crossing data for {len(self.crossings)} loops, expected {self.g}"
            )
        for row in self.crossings:
            for cell, eps, prefix in row:
                if not (isinstance(cell, int) and 1 <= cell <= self.g):
                    raise ValueError(f"crossed cell {cell!r} out of range 1..{self.g}")
                if eps not in (1, -1):
                    raise ValueError(f"crossing sign must be +1 or -1, got {eps!r}")
                if not isinstance(prefix, FreeWord):
                    raise ValueError(f"crossing prefix must be FreeWord, got {prefix!r}")
                if prefix.max_generator > self.g:
                    raise ValueError(f"crossing prefix {prefix} exceeds rank {self.g}")

    @classmethod
    def default(cls, g: int, d: int = 3) -> "ManifoldModel":
        return cls(
            g=g,
            d=d,
            character=(1,) * g,
            crossings=tuple(((i, 1, FreeWord()),) for i in range(1, g + 1)),
        )

    @property
    def is_default(self) -> bool:
        base = ManifoldModel.default(self.g, self.d)
        return (
            self.character == base.character and self.crossings == base.crossings
        )


@dataclass(frozen=True)
class PuncturedSignature:
    """A manifold model with k punctures removed."""

    model: ManifoldModel
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"puncture count must be a non-negative int, got {self.k!r}")

    @property
    def wedge(self) -> WedgeSignature:
        labels = [SphereLabel("p", i) for i in range(1, self.k + 1)]
        labels += [SphereLabel("t", j) for j in range(1, self.model.g + 1)]
        return WedgeSignature(self.model.g, labels, self.model.d)


@dataclass(frozen=True)
class BraidElement:
    """k slot words plus a puncture permutation (stored 0-indexed)."""

    words: tuple[FreeWord, ...]
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.words) != len(self.perm):
            raise ValueError(
                f"{len(self.words)} words but permutation of size {len(self.perm)}"
            )
        for w in self.words:
            if not isinstance(w, FreeWord):
                raise ValueError(f"slot words must be FreeWord, got {w!r}")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"perm {self.perm} is not a permutation of 0..k-1")

    @property
    def k(self) -> int:
        return len(self.words)

    @classmethod
    def identity(cls, k: int) -> "BraidElement":
        return cls(tuple(FreeWord() for _ in range(k)), tuple(range(k)))

    @property
    def is_identity(self) -> bool:
        return all(w.is_identity for w in self.words) and self.perm == tuple(
            range(self.k)
        )

    def __str__(self) -> str:
        return format_braid(self)


def braid_mul(a: BraidElement, b: BraidElement) -> BraidElement:
    """Semidirect product: (a; s)(b; r) = ((a_i b_{s^-1(i)})_i; s r)."""
    if a.k != b.k:
        raise SizeMismatch(f"braid sizes differ: {a.k} vs {b.k}")
    inv = [0] * a.k
    for i, j in enumerate(a.perm):
        inv[j] = i
    words = tuple(a.words[i] * b.words[inv[i]] for i in range(a.k))
    perm = tuple(a.perm[b.perm[i]] for i in range(a.k))
    return BraidElement(words, perm)


def braid_inverse(a: BraidElement) -> BraidElement:
    """Two-sided inverse under braid_mul: slot i carries the inverse of
    the word that braid_mul would route into slot i."""
    inv = [0] * a.k
    for i, j in enumerate(a.perm):
        inv[j] = i
    words = tuple(~a.words[a.perm[i]] for i in range(a.k))
    return BraidElement(words, tuple(inv))


def _check_slot(sig: PuncturedSignature, slot: int) -> None:
    if not (isinstance(slot, int) and 1 <= slot <= sig.k):
        raise SlotOutOfRange(f"slot {slot} outside 1..{sig.k}")


def push_letter(sig: PuncturedSignature, letter: int, slot: int) -> SelfMapClass:
    """Class of pushing puncture `slot` around a single signed loop letter.

    Circles are fixed.  The pushed puncture sphere picks up the letter
    (signed by the orientation character); each cell the letter's loop
    crosses picks up a copy of the puncture sphere translated by the
    crossing prefix, with the crossing sign, and for an inverse letter
    the prefix is premultiplied by the inverse letter and negated.
    """
    _check_slot(sig, slot)
    model = sig.model
    i = abs(letter)
    if not (isinstance(letter, int) and letter != 0 and i <= model.g):
        raise ValueError(f"letter {letter!r} outside rank {model.g}")
    wsig = sig.wedge
    lw = FreeWord([letter])
    sgn = char_sign(model.character, lw)
    p_slot = SphereLabel("p", slot)
    spheres = {lab: ModuleVec.unit(lab) for lab in wsig.labels}
    spheres[p_slot] = ModuleVec([(p_slot, RingElem.from_word(lw, sgn))])
    for cell, eps, prefix in model.crossings[i - 1]:
        cell_lab = SphereLabel("t", cell)
        if letter > 0:
            gain = RingElem.from_word(prefix, eps)
        else:
            gain = RingElem.from_word(lw * prefix, -eps)
        spheres[cell_lab] = spheres[cell_lab] + ModuleVec([(p_slot, gain)])
    return SelfMapClass(wsig, FreeEndo.identity(model.g), spheres)


def push_sym(sig: PuncturedSignature, perm: tuple[int, ...]) -> SelfMapClass:
    """Class of the puncture permutation: p_i goes to p_{perm(i)}, rest fixed."""
    if sorted(perm) != list(range(sig.k)):
        raise SizeMismatch(f"perm {perm} is not a permutation of 0..{sig.k - 1}")
    wsig = sig.wedge
    spheres = {lab: ModuleVec.unit(lab) for lab in wsig.labels}
    for i in range(sig.k):
        spheres[SphereLabel("p", i + 1)] = ModuleVec.unit(SphereLabel("p", perm[i] + 1))
    return SelfMapClass(wsig, FreeEndo.identity(sig.model.g), spheres)


def push_word(sig: PuncturedSignature, w: FreeWord, slot: int) -> SelfMapClass:
    """Fold push_letter over the letters of w, first letter outermost."""
    _check_slot(sig, slot)
    if w.max_generator > sig.model.g:
        raise ValueError(f"word {w} exceeds rank {sig.model.g}")
    acc = identity_map(sig.wedge)
    letter_maps: dict[int, SelfMapClass] = {}
    for letter in w.letters:
        step = letter_maps.get(letter)
        if step is None:
            step = letter_maps[letter] = push_letter(sig, letter, slot)
        acc = compose(acc, step)
    return acc


def loop_coefficient(w: FreeWord, i: int) -> RingElem:
    """Signed sum of the letter-profile prefixes of generator i in w.

    This is the cell-i coefficient of the closed-form push: it satisfies
    the left cocycle law f(uv) = f(u) + u*f(v).
    """
    return RingElem([(prefix, eps) for eps, prefix in letter_profile(w, i)])


def push_word_closed(sig: PuncturedSignature, w: FreeWord, slot: int) -> SelfMapClass:
    """Closed form of push_word for the default model.

    Circles fixed; the pushed puncture sphere is translated by w; cell i
    gains loop_coefficient(w, i) times the pushed puncture sphere.
    """
    _check_slot(sig, slot)
    model = sig.model
    if not model.is_default:
        raise ModelNotDefault(
            "closed-form push is only established for the default crossing data"
        )
    if w.max_generator > model.g:
        raise ValueError(f"word {w} exceeds rank {model.g}")
    wsig = sig.wedge
    p_slot = SphereLabel("p", slot)
    spheres = {lab: ModuleVec.unit(lab) for lab in wsig.labels}
    spheres[p_slot] = ModuleVec([(p_slot, RingElem.from_word(w))])
    for i in range(1, model.g + 1):
        f_i = loop_coefficient(w, i)
        if f_i:
            cell_lab = SphereLabel("t", i)
            spheres[cell_lab] = spheres[cell_lab] + ModuleVec([(p_slot, f_i)])
    return SelfMapClass(wsig, FreeEndo.identity(model.g), spheres)


def push_braid(sig: PuncturedSignature, braid: BraidElement) -> SelfMapClass:
    """Class of a general braid: slot-word pushes around the permutation push.

    The permutation factor sits innermost; the slot-word factors commute
    with each other, so only their placement relative to the permutation
    matters, and it is pinned by the homomorphism property
    push_braid(braid_mul(a, b)) = compose(push_braid(a), push_braid(b)).
    """
    if braid.k != sig.k:
        raise SizeMismatch(f"braid has {braid.k} slots, signature has {sig.k}")
    acc = push_sym(sig, braid.perm)
    for slot in range(sig.k, 0, -1):
        w = braid.words[slot - 1]
        if not w.is_identity:
            acc = compose(push_word(sig, w, slot), acc)
    return acc


@dataclass(frozen=True)
class NotInImage:
    """Diagnostic result: the class is not a push of any braid."""

    reason: str

    def __bool__(self) -> bool:
        return False


def recover_braid(sig: PuncturedSignature, h: SelfMapClass) -> BraidElement | NotInImage:
    """Decode the braid whose push is h, or explain why none exists.

    The image of each puncture sphere must be a single unit-coefficient
    group-translate of a puncture sphere (the coefficient matching the
    orientation character of the translating word); the permutation and
    slot words are read off those images and the candidate is confirmed
    by a full round trip through push_braid.
    """
    model = sig.model
    if not model.is_default:
        raise ModelNotDefault("braid recovery is only established for the default model")
    if h.sig != sig.wedge:
        raise SignatureMismatch("class does not live on this punctured model")
    if not h.circle_part.is_identity:
        return NotInImage("circle part is not the identity")
    k = sig.k
    perm: list[int | None] = [None] * k
    words: list[FreeWord | None] = [None] * k
    for i in range(1, k + 1):
        vec = h.sphere(SphereLabel("p", i))
        if len(vec.entries) != 1:
            return NotInImage(f"image of p{i} is not a single basis term")
        (lab, r), = vec.entries.items()
        if lab.kind != "p":
            return NotInImage(f"image of p{i} lands on {lab}")
        if len(r.terms) != 1:
            return NotInImage(f"image of p{i} has {len(r.terms)} group terms")
        (u, c), = r.terms.items()
        if c != char_sign(model.character, u):
            return NotInImage(f"image of p{i} has coefficient {c}, expected a unit")
        j = lab.index
        if words[j - 1] is not None:
            return NotInImage(f"two puncture spheres land on p{j}")
        perm[i - 1] = j - 1
        words[j - 1] = u
    candidate = BraidElement(tuple(words), tuple(perm))  # type: ignore[arg-type]
    if push_braid(sig, candidate) != h:
        return NotInImage("cell images do not match the decoded braid")
    return candidate


@dataclass(frozen=True)
class KernelReport:
    """Result of searching for braids that push to the identity class."""

    g: int
    k: int
    max_word_len: int
    exhaustive: bool
    total_checked: int
    nontrivial_kernel: tuple[BraidElement, ...]

    @property
    def passed(self) -> bool:
        return not self.nontrivial_kernel


def kernel_report(
    sig: PuncturedSignature,
    max_word_len: int,
    max_braids: int,
    seed: int = 0,
) -> KernelReport:
    """Search braids with slot words up to max_word_len for kernel elements.

    Exhaustive when the braid count fits in max_braids, otherwise a seeded
    sample of max_braids elements.  The identity braid is always in the
    kernel and is not reported; any other hit is a counterexample to
    injectivity and lands in nontrivial_kernel.
    """
    if not sig.model.is_default:
        raise ModelNotDefault("kernel search is only established for the default model")
    ball = list(enumerate_words(sig.model.g, max_word_len))
    perms = list(itertools.permutations(range(sig.k)))
    total = len(ball) ** sig.k * len(perms)
    ident = identity_map(sig.wedge)
    hits: list[BraidElement] = []
    if total <= max_braids:
        checked = 0
        for words in itertools.product(ball, repeat=sig.k):
            for perm in perms:
                braid = BraidElement(tuple(words), perm)
                checked += 1
                if push_braid(sig, braid) == ident and not braid.is_identity:
                    hits.append(braid)
        return KernelReport(
            sig.model.g, sig.k, max_word_len, True, checked, tuple(hits)
        )
    rng = random.Random(seed)
    for _ in range(max_braids):
        words = tuple(rng.choice(ball) for _ in range(sig.k))
        perm = tuple(rng.sample(range(sig.k), sig.k))
        braid = BraidElement(words, perm)
        if push_braid(sig, braid) == ident and not braid.is_identity:
            hits.append(braid)
    return KernelReport(
        sig.model.g, sig.k, max_word_len, False, max_braids, tuple(hits)
    )


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, k: int) -> tuple[int, ...]:
    """Cycle notation over 1..k, e.g. '(1 2)(3 4)'; 'id', 'e', '()' = identity."""
    body = text.strip()
    perm = list(range(k))
    if body in ("id", "e", "()", ""):
        return tuple(perm)
    consumed = _CYCLE_RE.sub("", body).strip()
    if consumed:
        raise ParseError(f"bad permutation syntax {text!r}")
    seen: set[int] = set()
    for m in _CYCLE_RE.finditer(body):
        parts = m.group(1).split()
        if not parts:
            continue
        try:
            entries = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"bad cycle entry in {m.group(0)!r}") from None
        for x in entries:
            if not 1 <= x <= k:
                raise ParseError(f"cycle entry {x} outside 1..{k}")
            if x in seen:
                raise ParseError(f"cycle entry {x} repeated")
            seen.add(x)
        for pos, x in enumerate(entries):
            perm[x - 1] = entries[(pos + 1) % len(entries)] - 1
    return tuple(perm)


def format_perm(perm: tuple[int, ...]) -> str:
    """Canonical cycle notation; identity prints as 'id'."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        cycles.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) if cycles else "id"


def parse_braid(text: str, k: int | None = None) -> BraidElement:
    """Parse '[w1 | w2 | ... | wk ; perm]' with words in the word grammar."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"braid must be bracketed, got {text!r}")
    body = body[1:-1]
    if ";" not in body:
        raise ParseError("braid needs '; perm' after the slot words")
    words_part, perm_part = body.rsplit(";", 1)
    word_texts = [t.strip() for t in words_part.split("|")]
    if word_texts == [""]:
        word_texts = []
    words = tuple(parse_word(t) for t in word_texts)
    if k is not None and len(words) != k:
        raise SizeMismatch(f"braid has {len(words)} slots, expected {k}")
    return BraidElement(words, parse_perm(perm_part, len(words)))


def format_braid(braid: BraidElement) -> str:
    words = " | ".join(format_word(w) for w in braid.words)
    return f"[{words} ; {format_perm(braid.perm)}]"
