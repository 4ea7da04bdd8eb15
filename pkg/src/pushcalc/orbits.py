"""Orbit counting for braid actions on labelled maps into a target space.

A TargetModel is a finite description of the data needed to count path
components of a space of maps from a punctured model into a target X:
the rank of pi_1(X), a finite set P of relevant homotopy classes of
sphere maps, the pi_1(X)-action on P, the reflection involution of P,
the "charge" subset of P that boundary conditions confine the punctures
to, and the finite list of pi_1-conjugacy classes of homomorphisms f
from the model's loop group into pi_1(X).

Loop words of the model and the words defining each f candidate both
use the standard word grammar; in an f candidate, generator i means the
i-th generator of pi_1(X).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import HypothesisViolation, ParseError, SizeMismatch, TooLarge
from .pushing import BraidElement, ManifoldModel
from .words import FreeWord, char_sign, endo_apply, FreeEndo, parse_word

DEFAULT_MAX_STATES = 1_000_000


def _as_perm(arr: Sequence[int], n: int, what: str) -> tuple[int, ...]:
    perm = tuple(arr)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"{what} is not a permutation of {n} classes")
    return perm


@dataclass(frozen=True)
class TargetModel:
    """Finite target data: classes P, pi_1 action, reflection, charge, f list.

    classes are arbitrary distinct hashable ids; all permutations and the
    charge are stored as indices into that tuple.  action[j] is the
    permutation induced by the (j+1)-st generator of pi_1(X); f_classes
    lists, for each candidate f, the images of the model loops as words in
    the pi_1(X) generators.
    """

    pi1_gens: int
    classes: tuple[object, ...]
    action: tuple[tuple[int, ...], ...]
    reflection: tuple[int, ...]
    charge: tuple[int, ...]
    f_classes: tuple[tuple[FreeWord, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.pi1_gens, int) or self.pi1_gens < 0:
            raise ValueError(f"pi1_gens must be a non-negative int, got {self.pi1_gens!r}")
        object.__setattr__(self, "classes", tuple(self.classes))
        n = len(self.classes)
        if len(set(self.classes)) != n:
            raise ValueError("class ids must be distinct")
        action = tuple(_as_perm(p, n, f"action of generator {j + 1}")
                       for j, p in enumerate(self.action))
        if len(action) != self.pi1_gens:
            raise ValueError(
                f"action table has {len(action)} entries for {self.pi1_gens} generators"
            )
        object.__setattr__(self, "action", action)
        refl = _as_perm(self.reflection, n, "reflection")
        if any(refl[refl[i]] != i for i in range(n)):
            raise ValueError("reflection must be an involution")
        object.__setattr__(self, "reflection", refl)
        charge = tuple(self.charge)
        if any(
            not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n
            for i in charge
        ):
            raise ValueError("charge indices out of range")
        if list(charge) != sorted(set(charge)):
            raise ValueError("charge must be strictly increasing class indices")
        cset = set(charge)
        for j, perm in enumerate(action):
            if any(perm[i] not in cset for i in charge):
                raise ValueError(
                    f"charge is not a union of orbits: generator {j + 1} leaves it"
                )
        object.__setattr__(self, "charge", charge)
        fcs = tuple(tuple(ws) for ws in self.f_classes)
        for ws in fcs:
            for w in ws:
                if not isinstance(w, FreeWord):
                    raise ValueError(f"f class entries must be FreeWord, got {w!r}")
                if w.max_generator > self.pi1_gens:
                    raise ValueError(
                        f"f class word {w} exceeds pi1 rank {self.pi1_gens}"
                    )
        if len({len(ws) for ws in fcs}) > 1:
            raise ValueError("all f classes must give the same number of loop images")
        object.__setattr__(self, "f_classes", fcs)

    @property
    def loop_rank(self) -> int | None:
        """Number of loop images each f candidate provides, None if no candidates."""
        return len(self.f_classes[0]) if self.f_classes else None

    def index_of(self, class_id: object) -> int:
        try:
            return self.classes.index(class_id)
        except ValueError:
            raise ValueError(f"unknown class id {class_id!r}") from None

    def inverse_action(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for perm in self.action:
            inv = [0] * len(perm)
            for i, j in enumerate(perm):
                inv[j] = i
            out.append(tuple(inv))
        return tuple(out)


@dataclass(frozen=True)
class MapState:
    """A component label: an f candidate index plus one charge class per puncture."""

    f: int
    g_classes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "g_classes", tuple(self.g_classes))


def state_from_ids(target: TargetModel, f: int, ids: Iterable[object]) -> MapState:
    """Build a MapState from class ids instead of indices."""
    return MapState(f, tuple(target.index_of(c) for c in ids))


def state_ids(target: TargetModel, state: MapState) -> tuple[object, ...]:
    """The class ids carried by a state, in puncture order."""
    return tuple(target.classes[i] for i in state.g_classes)


def _check_state(target: TargetModel, state: MapState) -> None:
    if not 0 <= state.f < len(target.f_classes):
        raise ValueError(f"state names f class {state.f} of {len(target.f_classes)}")
    cset = set(target.charge)
    for i in state.g_classes:
        if i not in cset:
            raise ValueError(f"state class index {i} is not in the charge")


def _require_hypothesis(model: ManifoldModel, force: bool, what: str) -> None:
    if force or model.g == 0 or model.low_handle_dim:
        return
    raise HypothesisViolation(
        f"{what} requires g = 0 or a declared low handle dimension; "
        "pass force=True to apply the formula anyway"
    )


def _apply_pi1_word(
    target: TargetModel,
    inv_action: tuple[tuple[int, ...], ...],
    w: FreeWord,
    idx: int,
) -> int:
    """Apply the left action of the pi_1(X) word w to class index idx."""
    for letter in reversed(w.letters):
        if letter > 0:
            idx = target.action[letter - 1][idx]
        else:
            idx = inv_action[-letter - 1][idx]
    return idx


def _check_reflection_charge(target: TargetModel) -> None:
    cset = set(target.charge)
    for i in target.charge:
        if target.reflection[i] not in cset:
            raise ValueError(
                "charge is not closed under the reflection, required for "
                "non-orientable models"
            )


def act(
    model: ManifoldModel,
    target: TargetModel,
    braid: BraidElement,
    state: MapState,
    *,
    force: bool = False,
) -> MapState:
    """Left action of a braid on a map state.

    Puncture i receives the class of puncture perm^-1(i), pushed by the
    f-image of the slot-i loop word and reflected when that word reverses
    orientation.
    """
    _require_hypothesis(model, force, "the braid action on map states")
    _check_state(target, state)
    f_words = target.f_classes[state.f]
    if len(f_words) != model.g:
        raise SizeMismatch(
            f"f class gives {len(f_words)} loop images but the model has rank {model.g}"
        )
    if braid.k != len(state.g_classes):
        raise SizeMismatch(
            f"braid on {braid.k} punctures applied to a state with "
            f"{len(state.g_classes)} classes"
        )
    orientable = all(c == 1 for c in model.character)
    if not orientable:
        _check_reflection_charge(target)
    phi = FreeEndo(f_words)
    inv_action = target.inverse_action()
    inv_perm = [0] * braid.k
    for i, j in enumerate(braid.perm):
        inv_perm[j] = i
    cset = set(target.charge)
    out = []
    for i in range(braid.k):
        word = braid.words[i]
        if word.max_generator > model.g:
            raise ValueError(f"slot word {word} exceeds rank {model.g}")
        idx = state.g_classes[inv_perm[i]]
        if not orientable and char_sign(model.character, word) == -1:
            idx = target.reflection[idx]
        idx = _apply_pi1_word(target, inv_action, endo_apply(phi, word), idx)
        if idx not in cset:
            raise ValueError("action left the charge; target data is inconsistent")
        out.append(idx)
    return MapState(state.f, tuple(out))


def _orbit_count(target: TargetModel, f_words: Sequence[FreeWord]) -> int:
    """Number of orbits of the charge under the f-images of the model loops."""
    inv_action = target.inverse_action()
    parent = {i: i for i in target.charge}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for w in f_words:
        for i in target.charge:
            j = _apply_pi1_word(target, inv_action, w, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(i) for i in target.charge})


def components_formula(
    target: TargetModel, g: int | ManifoldModel, k: int
) -> int:
    """Count components as sum over f of multichoose(orbits of charge, k).

    Passing a ManifoldModel checks its hypotheses (orientable, and g = 0 or
    declared low handle dimension); passing a bare rank opts into the
    formula without a model.
    """
    if isinstance(g, ManifoldModel):
        model = g
        _require_hypothesis(model, False, "the component-count formula")
        if any(c != 1 for c in model.character):
            raise HypothesisViolation(
                "the component-count formula requires an orientable model"
            )
        rank = model.g
    else:
        rank = g
    if not isinstance(rank, int) or rank < 0:
        raise ValueError(f"rank must be a non-negative int, got {rank!r}")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"puncture count must be a non-negative int, got {k!r}")
    total = 0
    for f_words in target.f_classes:
        if len(f_words) != rank:
            raise SizeMismatch(
                f"f class gives {len(f_words)} loop images but rank is {rank}"
            )
        if k == 0:
            total += 1
            continue
        c_f = _orbit_count(target, f_words)
        total += comb(c_f + k - 1, k)
    return total


def components_bruteforce(
    target: TargetModel,
    model: ManifoldModel,
    k: int,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    force: bool = False,
) -> int:
    """Count components by exploring the state graph under generator braids.

    States are (f, classes) pairs; edges apply each loop generator in each
    slot and each adjacent transposition.  Refuses with TooLarge when
    |classes|^k * |f classes| exceeds max_states.
    """
    _require_hypothesis(model, force, "the brute-force component count")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"puncture count must be a non-negative int, got {k!r}")
    size = len(target.classes) ** k * len(target.f_classes)
    if size > max_states:
        raise TooLarge(
            f"state graph would have up to {size} states, over the cap {max_states}"
        )
    gens: list[BraidElement] = []
    e = FreeWord()
    for slot in range(k):
        for j in range(1, model.g + 1):
            words = tuple(
                FreeWord((j,)) if i == slot else e for i in range(k)
            )
            gens.append(BraidElement(words, tuple(range(k))))
    for slot in range(k - 1):
        perm = list(range(k))
        perm[slot], perm[slot + 1] = perm[slot + 1], perm[slot]
        gens.append(BraidElement((e,) * k, tuple(perm)))

    states = [
        MapState(f, tup)
        for f in range(len(target.f_classes))
        for tup in itertools.product(target.charge, repeat=k)
    ]
    parent = {s: s for s in states}

    def find(s: MapState) -> MapState:
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for s in states:
        for gen in gens:
            t = act(model, target, gen, s, force=True)
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[rs] = rt
    return len({find(s) for s in states})


def target_to_json(target: TargetModel) -> dict:
    """JSON form: permutations and the charge are written with class ids."""
    return {
        "pi1_gens": target.pi1_gens,
        "classes": list(target.classes),
        "action": {
            f"a{j + 1}": [target.classes[i] for i in perm]
            for j, perm in enumerate(target.action)
        },
        "reflection": [target.classes[i] for i in target.reflection],
        "charge": [target.classes[i] for i in target.charge],
        "f_classes": [[str(w) for w in ws] for ws in target.f_classes],
    }


def _ids_to_indices(
    target_classes: Sequence[object], ids: Sequence[object], what: str
) -> tuple[int, ...]:
    lookup = {c: i for i, c in enumerate(target_classes)}
    out = []
    for c in ids:
        if c not in lookup:
            raise ParseError(f"{what} names unknown class id {c!r}")
        out.append(lookup[c])
    return tuple(out)


def target_from_json(obj: object) -> TargetModel:
    """Parse and validate the JSON form of a TargetModel."""
    if not isinstance(obj, Mapping):
        raise ParseError("target model must be a JSON object")
    required = {"pi1_gens", "classes", "action", "reflection", "charge", "f_classes"}
    missing = required - set(obj)
    if missing:
        raise ParseError(f"target model is missing keys: {sorted(missing)}")
    pi1_gens = obj["pi1_gens"]
    if not isinstance(pi1_gens, int) or isinstance(pi1_gens, bool) or pi1_gens < 0:
        raise ParseError("pi1_gens must be a non-negative integer")
    classes = obj["classes"]
    if not isinstance(classes, Sequence) or isinstance(classes, str):
        raise ParseError("classes must be an array of ids")
    classes = tuple(classes)
    action_obj = obj["action"]
    if not isinstance(action_obj, Mapping):
        raise ParseError("action must be an object keyed by generator names")
    action = []
    for j in range(1, pi1_gens + 1):
        key = f"a{j}"
        if key not in action_obj:
            raise ParseError(f"action is missing generator {key}")
        row = action_obj[key]
        if not isinstance(row, Sequence) or isinstance(row, str):
            raise ParseError(f"action of {key} must be an array of class ids")
        action.append(_ids_to_indices(classes, row, f"action of {key}"))
    if len(action_obj) != pi1_gens:
        extra = set(action_obj) - {f"a{j}" for j in range(1, pi1_gens + 1)}
        raise ParseError(f"action has unexpected keys: {sorted(extra)}")
    refl = obj["reflection"]
    if not isinstance(refl, Sequence) or isinstance(refl, str):
        raise ParseError("reflection must be an array of class ids")
    charge = obj["charge"]
    if not isinstance(charge, Sequence) or isinstance(charge, str):
        raise ParseError("charge must be an array of class ids")
    fcs_obj = obj["f_classes"]
    if not isinstance(fcs_obj, Sequence) or isinstance(fcs_obj, str):
        raise ParseError("f_classes must be an array of word arrays")
    f_classes = []
    for ws in fcs_obj:
        if not isinstance(ws, Sequence) or isinstance(ws, str):
            raise ParseError("each f class must be an array of words")
        f_classes.append(tuple(parse_word(w) for w in ws))
    try:
        return TargetModel(
            pi1_gens=pi1_gens,
            classes=classes,
            action=tuple(action),
            reflection=_ids_to_indices(classes, refl, "reflection"),
            charge=tuple(
                sorted(_ids_to_indices(classes, charge, "charge"))
            ),
            f_classes=tuple(f_classes),
        )
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
