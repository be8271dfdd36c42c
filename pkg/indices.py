"""Álgebra de índices: posições de subfórmulas, correspondência modal e índices de sequentes aninhados."""
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from exceptions import AdapterError, ModalInputError
from modal_core import And, Box, Dia, ModalFormula, Or


@dataclass(frozen=True)
class Root:
    def __str__(self) -> str:
        return "root"


@dataclass(frozen=True)
class Left:
    inner: "Index"

    def __str__(self) -> str:
        return f"left({self.inner})"


@dataclass(frozen=True)
class Right:
    inner: "Index"

    def __str__(self) -> str:
        return f"right({self.inner})"


@dataclass(frozen=True)
class DiaInd:
    dia: "Index"
    box: "Index"

    def __str__(self) -> str:
        return f"diaind({self.dia},{self.box})"


@dataclass(frozen=True)
class RelIdx:
    def __str__(self) -> str:
        return "relidx"


Index = Union[Root, Left, Right, DiaInd, RelIdx]

ROOT = Root()
RELIDX = RelIdx()


class Shape(str, Enum):
    """Formato do conectivo para a indexação básica."""
    AND = "and"
    OR = "or"
    BOX = "box"


def child_indices(i: Index, shape: Shape) -> List[Index]:
    if shape is Shape.BOX:
        return [Left(i)]
    return [Left(i), Right(i)]


def dia_child(i: Index, j: Index) -> Index:
    return DiaInd(i, j)


def format_index(i: Index) -> str:
    return str(i)


_TOKEN = re.compile(r"\s*(root|relidx|left|right|diaind|\(|\)|,)")


def _tokens(text: str, what: str) -> List[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ModalInputError(f"{what} inválido: {text!r} (posição {pos})")
        tokens.append(match.group(1))
        pos = match.end()
    return tokens


def parse_index(text: str) -> Index:
    """Lê um índice na sintaxe root | relidx | left(I) | right(I) | diaind(I,J)."""
    tokens = _tokens(text, "Índice")
    pos = 0

    def expect(tok: str):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ModalInputError(f"Índice inválido: {text!r} (esperado {tok!r})")
        pos += 1

    def parse() -> Index:
        nonlocal pos
        if pos >= len(tokens):
            raise ModalInputError(f"Índice incompleto: {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "root":
            return ROOT
        if tok == "relidx":
            return RELIDX
        if tok in ("left", "right"):
            expect("(")
            inner = parse()
            expect(")")
            return Left(inner) if tok == "left" else Right(inner)
        if tok == "diaind":
            expect("(")
            dia = parse()
            expect(",")
            box = parse()
            expect(")")
            return DiaInd(dia, box)
        raise ModalInputError(f"Índice inválido: {text!r} (token {tok!r})")

    result = parse()
    if pos != len(tokens):
        raise ModalInputError(f"Texto sobrando no índice: {text!r}")
    return result


def subterms(i: Index) -> Iterator[Index]:
    yield i
    if isinstance(i, (Left, Right)):
        yield from subterms(i.inner)
    elif isinstance(i, DiaInd):
        yield from subterms(i.dia)
        yield from subterms(i.box)


def mentions(i: Index, target: Index) -> bool:
    return any(sub == target for sub in subterms(i))


def resolve(goal: ModalFormula, i: Index) -> ModalFormula:
    """
    Percorre a fórmula seguindo o índice e devolve a subfórmula endereçada.

    Em diaind(I,J), I precisa endereçar um ◇ e J um □.

    Raises:
        AdapterError: se o índice não endereça nenhuma subfórmula
    """
    if isinstance(i, Root):
        return goal
    if isinstance(i, Left):
        parent = resolve(goal, i.inner)
        if isinstance(parent, (And, Or)):
            return parent.left
        if isinstance(parent, (Box, Dia)):
            return parent.body
        raise AdapterError(f"Índice pendente: {i} desce em um literal")
    if isinstance(i, Right):
        parent = resolve(goal, i.inner)
        if isinstance(parent, (And, Or)):
            return parent.right
        raise AdapterError(f"Índice pendente: {i} não endereça um conectivo binário")
    if isinstance(i, DiaInd):
        dia = resolve(goal, i.dia)
        if not isinstance(dia, Dia):
            raise AdapterError(f"Em {i}, {i.dia} não endereça uma fórmula ◇")
        if not isinstance(resolve(goal, i.box), Box):
            raise AdapterError(f"Em {i}, {i.box} não endereça uma fórmula □")
        return dia.body
    raise AdapterError(f"Índice {i} não endereça subfórmula")


def try_resolve(goal: ModalFormula, i: Index) -> Optional[ModalFormula]:
    try:
        return resolve(goal, i)
    except AdapterError:
        return None


def world_of(i: Index, creates_world: Callable[[Index], bool]) -> Index:
    """
    Mundo em que vive a fórmula endereçada por i.

    Mundos são nomeados por root ou pelo índice da fórmula que os criou
    (um □ no caso das provas diretas).
    """
    if isinstance(i, Root):
        return ROOT
    if isinstance(i, Left):
        if creates_world(i.inner):
            return i.inner
        return world_of(i.inner, creates_world)
    if isinstance(i, Right):
        return world_of(i.inner, creates_world)
    if isinstance(i, DiaInd):
        return i.box
    raise AdapterError(f"Índice {i} não pertence a nenhum mundo")


# Índices de sequentes aninhados

@dataclass(frozen=True)
class Zb:
    def __str__(self) -> str:
        return "zb"


@dataclass(frozen=True)
class Chld:
    position: int
    parent: "SeqIndex"

    def __post_init__(self):
        if self.position < 1:
            raise ModalInputError(f"Posição de sequente aninhado deve ser >= 1: {self.position}")

    def __str__(self) -> str:
        return f"chld({self.position},{self.parent})"


SeqIndex = Union[Zb, Chld]

ZB = Zb()


@dataclass(frozen=True)
class NsIndex:
    pos: Index
    seq: SeqIndex

    def __str__(self) -> str:
        return f"ns({self.pos},{self.seq})"


_SEQ_TOKEN = re.compile(r"\s*(zb|chld|\(|\)|,|\d+)")


def parse_seq(text: str) -> SeqIndex:
    """Lê um índice de sequente na sintaxe zb | chld(n, S)."""
    tokens, pos = [], 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _SEQ_TOKEN.match(stripped, pos)
        if not match:
            raise ModalInputError(f"Índice de sequente inválido: {text!r}")
        tokens.append(match.group(1))
        pos = match.end()

    cursor = 0

    def take() -> str:
        nonlocal cursor
        if cursor >= len(tokens):
            raise ModalInputError(f"Índice de sequente incompleto: {text!r}")
        cursor += 1
        return tokens[cursor - 1]

    def parse() -> SeqIndex:
        tok = take()
        if tok == "zb":
            return ZB
        if tok != "chld" or take() != "(":
            raise ModalInputError(f"Índice de sequente inválido: {text!r}")
        number = take()
        if not number.isdigit() or take() != ",":
            raise ModalInputError(f"Índice de sequente inválido: {text!r}")
        parent = parse()
        if take() != ")":
            raise ModalInputError(f"Índice de sequente inválido: {text!r}")
        return Chld(int(number), parent)

    result = parse()
    if cursor != len(tokens):
        raise ModalInputError(f"Texto sobrando no índice de sequente: {text!r}")
    return result


def format_seq(s: SeqIndex) -> str:
    return str(s)


class IndexMap:
    """Bijeção imutável NsIndex → Index; extend devolve um novo mapa."""

    def __init__(self, pairs: Optional[Mapping[NsIndex, Index]] = None):
        self._forward: Dict[NsIndex, Index] = dict(pairs or {})
        self._backward: Dict[Index, NsIndex] = {v: k for k, v in self._forward.items()}
        if len(self._backward) != len(self._forward):
            raise AdapterError("Mapa de índices não é injetivo")

    @classmethod
    def seed(cls) -> "IndexMap":
        return cls({NsIndex(ROOT, ZB): ROOT})

    def lookup(self, n: NsIndex) -> Index:
        try:
            return self._forward[n]
        except KeyError:
            raise AdapterError(f"Índice aninhado não mapeado: {n}") from None

    def extend(self, n: NsIndex, i: Index) -> "IndexMap":
        if n in self._forward:
            raise AdapterError(f"Índice aninhado já mapeado: {n}")
        if i in self._backward:
            raise AdapterError(f"Índice {i} já usado por {self._backward[i]}")
        pairs = dict(self._forward)
        pairs[n] = i
        return IndexMap(pairs)

    def __contains__(self, n: NsIndex) -> bool:
        return n in self._forward

    def __len__(self) -> int:
        return len(self._forward)

    def items(self) -> List[Tuple[NsIndex, Index]]:
        return list(self._forward.items())


def map_lookup(m: IndexMap, n: NsIndex) -> Index:
    return m.lookup(n)


def map_extend(m: IndexMap, n: NsIndex, i: Index) -> IndexMap:
    return m.extend(n, i)
