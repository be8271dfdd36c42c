"""Fórmulas polarizadas, operadores de atraso e as traduções polos e tr."""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Union

from modal_core import And, Atom, Box, Dia, ModalFormula, NAtom, Or


# Termos de mundo

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    id: int

    def __str__(self) -> str:
        return f"w{self.id}"


WorldTerm = Union[Var, Const]


# Conectivos

@dataclass(frozen=True)
class PosAtom:
    """Átomo positivo; arg None quando a fórmula é modal (sem mundo)."""
    name: str
    arg: Optional[WorldTerm] = None


@dataclass(frozen=True)
class NegAtom:
    name: str
    arg: Optional[WorldTerm] = None


@dataclass(frozen=True)
class Rel:
    x: WorldTerm
    y: WorldTerm


@dataclass(frozen=True)
class NRel:
    x: WorldTerm
    y: WorldTerm


@dataclass(frozen=True)
class AndNeg:
    left: "PolFormula"
    right: "PolFormula"


@dataclass(frozen=True)
class AndPos:
    left: "PolFormula"
    right: "PolFormula"


@dataclass(frozen=True)
class OrNeg:
    left: "PolFormula"
    right: "PolFormula"


@dataclass(frozen=True)
class OrPos:
    left: "PolFormula"
    right: "PolFormula"


@dataclass(frozen=True)
class All:
    bound: str
    body: "PolFormula"


@dataclass(frozen=True)
class Ex:
    bound: str
    body: "PolFormula"


@dataclass(frozen=True)
class TruePos:
    pass


@dataclass(frozen=True)
class FalseNeg:
    pass


# Nível modal de polos: □ negativo, ◇ positivo

@dataclass(frozen=True)
class PolBox:
    body: "PolFormula"


@dataclass(frozen=True)
class PolDia:
    body: "PolFormula"


PolFormula = Union[
    PosAtom, NegAtom, Rel, NRel, AndNeg, AndPos, OrNeg, OrPos,
    All, Ex, TruePos, FalseNeg, PolBox, PolDia,
]

TRUE_POS = TruePos()
FALSE_NEG = FalseNeg()


class Polarity(str, Enum):
    """Polaridade de uma fórmula."""
    POS = "pos"
    NEG = "neg"


_POSITIVE = (PosAtom, Rel, AndPos, OrPos, Ex, TruePos, PolDia)


def polarity(f: PolFormula) -> Polarity:
    return Polarity.POS if isinstance(f, _POSITIVE) else Polarity.NEG


def is_literal(f: PolFormula) -> bool:
    return isinstance(f, (PosAtom, NegAtom, Rel, NRel))


def is_positive(f: PolFormula) -> bool:
    return polarity(f) is Polarity.POS


def delay_pos(a: PolFormula) -> PolFormula:
    return AndPos(TRUE_POS, a)


def delay_neg(a: PolFormula) -> PolFormula:
    return OrNeg(FALSE_NEG, a)


def delp(a: PolFormula) -> PolFormula:
    """Mantém literais e fórmulas positivas; atrasa as demais."""
    if is_literal(a) or is_positive(a):
        return a
    return delay_pos(a)


def is_delay_pos(f: PolFormula) -> bool:
    return isinstance(f, AndPos) and isinstance(f.left, TruePos)


def is_delay_neg(f: PolFormula) -> bool:
    return isinstance(f, OrNeg) and isinstance(f.left, FalseNeg)


def polos(a: ModalFormula) -> PolFormula:
    """Tradução polarizada de nível modal."""
    if isinstance(a, Atom):
        return PosAtom(a.name)
    if isinstance(a, NAtom):
        return NegAtom(a.name)
    if isinstance(a, And):
        return AndNeg(delp(polos(a.left)), delp(polos(a.right)))
    if isinstance(a, Or):
        return OrNeg(delp(polos(a.left)), delp(polos(a.right)))
    if isinstance(a, Box):
        return PolBox(delp(polos(a.body)))
    return PolDia(delay_neg(delp(polos(a.body))))


class _Translator:
    def __init__(self):
        self.counter = 0

    def fresh(self) -> Var:
        var = Var(f"y{self.counter}")
        self.counter += 1
        return var

    def tr(self, a: ModalFormula, x: WorldTerm) -> PolFormula:
        if isinstance(a, Atom):
            return PosAtom(a.name, x)
        if isinstance(a, NAtom):
            return NegAtom(a.name, x)
        if isinstance(a, And):
            left = self.tr(a.left, x)
            return AndNeg(delp(left), delp(self.tr(a.right, x)))
        if isinstance(a, Or):
            left = self.tr(a.left, x)
            return OrNeg(delp(left), delp(self.tr(a.right, x)))
        y = self.fresh()
        body = delp(self.tr(a.body, y))
        if isinstance(a, Box):
            return All(y.name, OrNeg(NRel(x, y), body))
        return Ex(y.name, AndPos(Rel(x, y), delay_neg(body)))


def tr(a: ModalFormula, x: WorldTerm) -> PolFormula:
    """
    Tradução de correspondência para primeira ordem polarizada.

    Os nomes ligados são y0, y1, ... na ordem de pré-ordem das modalidades.
    """
    return _Translator().tr(a, x)


def erase_delays(f: PolFormula) -> PolFormula:
    """Remove todos os padrões t+ ∧+ · e f− ∨− ·."""
    if is_delay_pos(f) or is_delay_neg(f):
        return erase_delays(f.right)
    if isinstance(f, (AndNeg, AndPos, OrNeg, OrPos)):
        return type(f)(erase_delays(f.left), erase_delays(f.right))
    if isinstance(f, (All, Ex)):
        return type(f)(f.bound, erase_delays(f.body))
    if isinstance(f, (PolBox, PolDia)):
        return type(f)(erase_delays(f.body))
    return f


def forget_polarity(f: PolFormula) -> ModalFormula:
    """Projeta uma fórmula de nível modal (sem atrasos) de volta em ModalFormula."""
    if isinstance(f, PosAtom):
        return Atom(f.name)
    if isinstance(f, NegAtom):
        return NAtom(f.name)
    if isinstance(f, (AndNeg, AndPos)):
        return And(forget_polarity(f.left), forget_polarity(f.right))
    if isinstance(f, (OrNeg, OrPos)):
        return Or(forget_polarity(f.left), forget_polarity(f.right))
    if isinstance(f, PolBox):
        return Box(forget_polarity(f.body))
    if isinstance(f, PolDia):
        return Dia(forget_polarity(f.body))
    raise ValueError(f"Fórmula sem correspondente modal: {f!r}")


def substitute(f: PolFormula, name: str, term: WorldTerm) -> PolFormula:
    """Substitui a variável livre name por term."""

    def sub(t: Optional[WorldTerm]) -> Optional[WorldTerm]:
        return term if t == Var(name) else t

    if isinstance(f, (PosAtom, NegAtom)):
        return type(f)(f.name, sub(f.arg))
    if isinstance(f, (Rel, NRel)):
        return type(f)(sub(f.x), sub(f.y))
    if isinstance(f, (AndNeg, AndPos, OrNeg, OrPos)):
        return type(f)(substitute(f.left, name, term), substitute(f.right, name, term))
    if isinstance(f, (All, Ex)):
        if f.bound == name:
            return f
        return type(f)(f.bound, substitute(f.body, name, term))
    if isinstance(f, (PolBox, PolDia)):
        return type(f)(substitute(f.body, name, term))
    return f


_DUALS = {
    AndNeg: OrPos, OrPos: AndNeg, AndPos: OrNeg, OrNeg: AndPos,
    All: Ex, Ex: All, PosAtom: NegAtom, NegAtom: PosAtom, Rel: NRel, NRel: Rel,
    PolBox: PolDia, PolDia: PolBox,
}


def pol_negate(f: PolFormula) -> PolFormula:
    """Negação polarizada (troca cada conectivo pelo dual de polaridade oposta)."""
    if isinstance(f, TruePos):
        return FALSE_NEG
    if isinstance(f, FalseNeg):
        return TRUE_POS
    dual = _DUALS[type(f)]
    if isinstance(f, (PosAtom, NegAtom)):
        return dual(f.name, f.arg)
    if isinstance(f, (Rel, NRel)):
        return dual(f.x, f.y)
    if isinstance(f, (AndNeg, AndPos, OrNeg, OrPos)):
        return dual(pol_negate(f.left), pol_negate(f.right))
    if isinstance(f, (All, Ex)):
        return dual(f.bound, pol_negate(f.body))
    return dual(pol_negate(f.body))


def complement(f: PolFormula) -> PolFormula:
    """Complemento exato de um literal."""
    return pol_negate(f)


def world_constants(f: PolFormula) -> frozenset:
    """Ids das constantes de mundo que ocorrem em f."""
    if isinstance(f, (PosAtom, NegAtom)):
        return frozenset({f.arg.id}) if isinstance(f.arg, Const) else frozenset()
    if isinstance(f, (Rel, NRel)):
        return frozenset(t.id for t in (f.x, f.y) if isinstance(t, Const))
    if isinstance(f, (AndNeg, AndPos, OrNeg, OrPos)):
        return world_constants(f.left) | world_constants(f.right)
    if isinstance(f, (All, Ex, PolBox, PolDia)):
        return world_constants(f.body)
    return frozenset()


def format_pol(f: PolFormula) -> str:
    """Impressão legível (usada apenas em logs e mensagens de erro)."""
    if isinstance(f, PosAtom):
        return f.name if f.arg is None else f"{f.name}({f.arg})"
    if isinstance(f, NegAtom):
        return f"~{f.name}" if f.arg is None else f"~{f.name}({f.arg})"
    if isinstance(f, Rel):
        return f"R({f.x},{f.y})"
    if isinstance(f, NRel):
        return f"~R({f.x},{f.y})"
    if isinstance(f, TruePos):
        return "t+"
    if isinstance(f, FalseNeg):
        return "f-"
    ops: Dict[type, str] = {AndNeg: "&-", AndPos: "&+", OrNeg: "|-", OrPos: "|+"}
    if type(f) in ops:
        return f"({format_pol(f.left)} {ops[type(f)]} {format_pol(f.right)})"
    if isinstance(f, All):
        return f"all {f.bound}.{format_pol(f.body)}"
    if isinstance(f, Ex):
        return f"ex {f.bound}.{format_pol(f.body)}"
    if isinstance(f, PolBox):
        return f"[]{format_pol(f.body)}"
    return f"<>{format_pol(f.body)}"
