"""
Kernel confiável: cálculo de sequentes clássico focado e aumentado.

O kernel aplica as regras assíncronas (∧−, ∨−, f−, ∀, store) e síncronas
(decide, ∧+, ∨+, t+, ∃, init, release, cut) consultando um conjunto de
ganchos FPC (clerks e experts). Alternativas oferecidas pelos experts são
exploradas em profundidade com retrocesso; o resultado é o trace do primeiro
ramo aceito.
"""
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, FrozenSet, List, Optional, Sequence, Tuple

from config import get_settings
from exceptions import EvidenceRejected, KernelLimitError
from indices import DiaInd, Index, Left, RELIDX, ROOT, Right, parse_index
from polarized import (
    All, AndNeg, AndPos, Const, Ex, FalseNeg, NRel, OrNeg, OrPos, PolFormula,
    Rel, TruePos, complement, delp, format_pol, is_delay_neg, is_delay_pos,
    is_literal, is_positive, pol_negate, substitute, world_constants,
)
from utils.logger import get_logger

logger = get_logger(__name__)

Cert = Any


class EventKind(str, Enum):
    """Tipos de eventos do trace."""
    DECIDE = "decide"
    STORE = "store"
    INIT = "init"
    RELEASE = "release"
    AND_NEG = "andNeg"
    OR_NEG = "orNeg"
    FALSE_NEG = "falseNeg"
    ALL = "all"
    AND_POS = "andPos"
    OR_POS = "orPos"
    TRUE_POS = "truePos"
    SOME = "some"
    CUT = "cut"


@dataclass(frozen=True)
class TraceEvent:
    kind: EventKind
    arg: Optional[str] = None

    def __str__(self) -> str:
        return self.kind.value if self.arg is None else f"{self.kind.value} {self.arg}"


ProofTrace = Tuple[TraceEvent, ...]


def format_trace(trace: Sequence[TraceEvent]) -> str:
    """Um evento por linha, com quebra de linha final."""
    return "".join(f"{event}\n" for event in trace)


def parse_trace(text: str) -> ProofTrace:
    events = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        kind, _, arg = line.partition(" ")
        events.append(TraceEvent(EventKind(kind), arg or None))
    return tuple(events)


def world_name(w: int) -> str:
    return f"w{w}"


@dataclass(frozen=True)
class StoredEntry:
    index: Index
    formula: PolFormula


@dataclass(frozen=True)
class WorldSupply:
    """Fornecedor de constantes de mundo frescas, estritamente crescentes."""
    used: FrozenSet[int] = frozenset()

    def fresh_world(self) -> Tuple[int, "WorldSupply"]:
        world = max(self.used) + 1 if self.used else 0
        return world, WorldSupply(self.used | {world})


def fresh_world(supply: WorldSupply) -> Tuple[int, WorldSupply]:
    return supply.fresh_world()


class FpcHooks:
    """
    Interface dos ganchos FPC.

    Clerks (sufixo _c) atuam nas regras assíncronas; experts (sufixo _e) nas
    síncronas. Cada gancho devolve uma lista de alternativas; lista vazia
    significa que a regra não se aplica com esse certificado. As implementações
    padrão repassam o certificado nos clerks e recusam nos experts.
    """

    def begin(self, cert: Cert) -> Cert:
        """Prepara o certificado para uma nova verificação."""
        return cert

    def and_neg_c(self, cert: Cert, f: PolFormula, i: Index) -> List[Tuple[Cert, Cert]]:
        return [(cert, cert)]

    def or_neg_c(self, cert: Cert, f: PolFormula, i: Index) -> List[Cert]:
        return [cert]

    def false_c(self, cert: Cert, i: Index) -> List[Cert]:
        return [cert]

    def all_c(self, cert: Cert, f: PolFormula, i: Index) -> List[Callable[[int], Cert]]:
        return [lambda _world: cert]

    def store_c(self, cert: Cert, f: PolFormula, pending: Index) -> List[Tuple[Index, Cert]]:
        return [(pending, cert)]

    def and_pos_e(self, cert: Cert, f: PolFormula, i: Index) -> List[Tuple[Cert, Cert]]:
        return []

    def or_pos_e(self, cert: Cert, f: PolFormula, i: Index) -> List[Tuple[int, Cert]]:
        return []

    def true_e(self, cert: Cert) -> bool:
        return False

    def some_e(self, cert: Cert, f: PolFormula, i: Index) -> List[Tuple[int, Cert]]:
        return []

    def init_e(self, cert: Cert, f: PolFormula, storage: Sequence[StoredEntry]) -> List[Index]:
        return []

    def release_e(self, cert: Cert, f: PolFormula, i: Index) -> List[Cert]:
        return []

    def decide_e(self, cert: Cert, storage: Sequence[StoredEntry]) -> List[Tuple[Index, Cert]]:
        return []

    def cut_e(self, cert: Cert, storage: Sequence[StoredEntry]) -> List[Tuple[PolFormula, Cert, Cert]]:
        return []


@dataclass(frozen=True)
class _Context:
    storage: Tuple[StoredEntry, ...] = ()
    worlds: WorldSupply = field(default_factory=WorldSupply)
    provenance: Tuple[Tuple[int, Index], ...] = ()

    def box_index_of(self, world: int) -> Optional[Index]:
        for w, index in self.provenance:
            if w == world:
                return index
        return None


_Result = Optional[Tuple[List[TraceEvent], WorldSupply]]
_Workbench = Tuple[Tuple[PolFormula, Index], ...]

# Cada regra aplicada abre no máximo um frame de _async/_sync e um de _decide
_FRAMES_PER_RULE = 2
# Recursão transitória dos ganchos (grupos, índices aninhados)
_FRAME_MARGIN = 2_000
_MAX_RECURSION_LIMIT = 2**31 - 1


@contextmanager
def _recursion_room(frames: int):
    previous = sys.getrecursionlimit()
    sys.setrecursionlimit(min(previous + frames, _MAX_RECURSION_LIMIT))
    try:
        yield
    finally:
        sys.setrecursionlimit(previous)


class Kernel:
    """Verificador de provas guiado por ganchos FPC."""

    def __init__(self, hooks: FpcHooks, limit: Optional[int] = None):
        self.hooks = hooks
        self.limit = limit if limit is not None else get_settings().kernel_limit
        self.steps = 0

    def check(self, cert: Cert, goal: PolFormula) -> ProofTrace:
        """
        Verifica o certificado contra a fórmula.

        A fórmula entra atrasada por delp, de modo que a primeira decisão é
        sempre sobre root.

        Returns:
            Trace do primeiro ramo aceito

        Raises:
            EvidenceRejected: nenhum ramo aceito
            KernelLimitError: limite de regras excedido
        """
        self.steps = 0
        context = _Context(worlds=WorldSupply(world_constants(goal)))
        try:
            with _recursion_room(_FRAMES_PER_RULE * self.limit + _FRAME_MARGIN):
                result = self._async(self.hooks.begin(cert), context, ((delp(goal), ROOT),))
        except RecursionError:
            raise KernelLimitError(f"Kernel excedeu a profundidade de pilha após {self.steps} regras") from None
        if result is None:
            logger.debug(f"Certificado rejeitado após {self.steps} regras")
            raise EvidenceRejected("Certificado rejeitado: nenhum ramo aceito pelo kernel")
        events, _ = result
        logger.debug(f"Certificado aceito: {len(events)} eventos, {self.steps} regras")
        return tuple(events)

    def _tick(self):
        self.steps += 1
        if self.steps > self.limit:
            raise KernelLimitError(f"Kernel excedeu {self.limit} regras aplicadas")

    def _children(self, f: PolFormula, i: Index, ctx: _Context) -> Optional[Tuple[Index, Index]]:
        if is_delay_pos(f) or is_delay_neg(f):
            return i, i
        if isinstance(f, OrNeg) and isinstance(f.left, NRel):
            return RELIDX, Left(i)
        if isinstance(f, AndPos) and isinstance(f.left, Rel):
            target = f.left.y
            box = ctx.box_index_of(target.id) if isinstance(target, Const) else None
            if box is None:
                return None
            return RELIDX, DiaInd(i, box)
        return Left(i), Right(i)

    # Fase assíncrona

    def _async(self, cert: Cert, ctx: _Context, workbench: _Workbench) -> _Result:
        self._tick()
        if not workbench:
            return self._decide(cert, ctx)
        (f, i), rest = workbench[0], workbench[1:]

        if isinstance(f, AndNeg):
            l_i, r_i = self._children(f, i, ctx)
            for c1, c2 in self.hooks.and_neg_c(cert, f, i):
                first = self._async(c1, ctx, ((f.left, l_i),) + rest)
                if first is None:
                    continue
                second = self._async(c2, replace(ctx, worlds=first[1]), ((f.right, r_i),) + rest)
                if second is None:
                    continue
                return [TraceEvent(EventKind.AND_NEG)] + first[0] + second[0], second[1]
            return None

        if isinstance(f, OrNeg):
            l_i, r_i = self._children(f, i, ctx)
            for c in self.hooks.or_neg_c(cert, f, i):
                result = self._async(c, ctx, ((f.left, l_i), (f.right, r_i)) + rest)
                if result is not None:
                    return [TraceEvent(EventKind.OR_NEG)] + result[0], result[1]
            return None

        if isinstance(f, FalseNeg):
            for c in self.hooks.false_c(cert, i):
                result = self._async(c, ctx, rest)
                if result is not None:
                    return [TraceEvent(EventKind.FALSE_NEG)] + result[0], result[1]
            return None

        if isinstance(f, All):
            for continuation in self.hooks.all_c(cert, f, i):
                world, worlds = ctx.worlds.fresh_world()
                inner = replace(ctx, worlds=worlds, provenance=ctx.provenance + ((world, i),))
                body = substitute(f.body, f.bound, Const(world))
                result = self._async(continuation(world), inner, ((body, i),) + rest)
                if result is not None:
                    return [TraceEvent(EventKind.ALL, world_name(world))] + result[0], result[1]
            return None

        if is_positive(f) or is_literal(f):
            for index, c in self.hooks.store_c(cert, f, i):
                inner = replace(ctx, storage=ctx.storage + (StoredEntry(index, f),))
                result = self._async(c, inner, rest)
                if result is not None:
                    return [TraceEvent(EventKind.STORE, str(index))] + result[0], result[1]
            return None

        logger.debug(f"Sem regra assíncrona para {format_pol(f)}")
        return None

    def _decide(self, cert: Cert, ctx: _Context) -> _Result:
        for index, c in self.hooks.decide_e(cert, ctx.storage):
            for entry in ctx.storage:
                if entry.index != index or not is_positive(entry.formula):
                    continue
                result = self._sync(c, ctx, entry.formula, index)
                if result is not None:
                    return [TraceEvent(EventKind.DECIDE, str(index))] + result[0], result[1]
        for formula, c1, c2 in self.hooks.cut_e(cert, ctx.storage):
            first = self._async(c1, ctx, ((formula, ROOT),))
            if first is None:
                continue
            second = self._async(c2, replace(ctx, worlds=first[1]), ((pol_negate(formula), ROOT),))
            if second is None:
                continue
            return [TraceEvent(EventKind.CUT, format_pol(formula))] + first[0] + second[0], second[1]
        return None

    # Fase síncrona

    def _sync(self, cert: Cert, ctx: _Context, f: PolFormula, i: Index) -> _Result:
        self._tick()

        if isinstance(f, AndPos):
            children = self._children(f, i, ctx)
            if children is None:
                return None
            l_i, r_i = children
            for c1, c2 in self.hooks.and_pos_e(cert, f, i):
                first = self._sync(c1, ctx, f.left, l_i)
                if first is None:
                    continue
                second = self._sync(c2, replace(ctx, worlds=first[1]), f.right, r_i)
                if second is None:
                    continue
                return [TraceEvent(EventKind.AND_POS)] + first[0] + second[0], second[1]
            return None

        if isinstance(f, OrPos):
            for side, c in self.hooks.or_pos_e(cert, f, i):
                child, index = (f.left, Left(i)) if side == 1 else (f.right, Right(i))
                result = self._sync(c, ctx, child, index)
                if result is not None:
                    return [TraceEvent(EventKind.OR_POS, str(side))] + result[0], result[1]
            return None

        if isinstance(f, TruePos):
            if self.hooks.true_e(cert):
                return [TraceEvent(EventKind.TRUE_POS)], ctx.worlds
            return None

        if isinstance(f, Ex):
            for world, c in self.hooks.some_e(cert, f, i):
                body = substitute(f.body, f.bound, Const(world))
                result = self._sync(c, ctx, body, i)
                if result is not None:
                    return [TraceEvent(EventKind.SOME, world_name(world))] + result[0], result[1]
            return None

        if is_positive(f):
            # Literal positivo: fecha contra o complemento armazenado
            wanted = complement(f)
            for index in self.hooks.init_e(cert, f, ctx.storage):
                if any(e.index == index and e.formula == wanted for e in ctx.storage):
                    return [TraceEvent(EventKind.INIT, str(index))], ctx.worlds
            return None

        for c in self.hooks.release_e(cert, f, i):
            result = self._async(c, ctx, ((f, i),))
            if result is not None:
                return [TraceEvent(EventKind.RELEASE)] + result[0], result[1]
        return None


def check(hooks: FpcHooks, cert: Cert, goal: PolFormula, limit: Optional[int] = None) -> ProofTrace:
    """Atalho: verifica cert contra goal com os ganchos dados."""
    return Kernel(hooks, limit).check(cert, goal)


def decide_indices(trace: Sequence[TraceEvent]) -> List[Index]:
    return [parse_index(e.arg) for e in trace if e.kind is EventKind.DECIDE]
