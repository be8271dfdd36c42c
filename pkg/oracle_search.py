"""Busca de provas limitada sobre o kernel, com ganchos permissivos que enumeram todas as escolhas legais."""
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from exceptions import EvidenceRejected, KernelLimitError, ModalInputError
from indices import Index, RELIDX, parse_index
from kernel import EventKind, FpcHooks, Kernel, ProofTrace, StoredEntry, TraceEvent
from layers import LmfCert, LmfNode
from modal_core import ModalFormula
from polarized import Const, Ex, PolFormula, complement, is_positive, tr
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    """Orçamento: decisões por ramo e tentativas de decisão no total."""
    max_decides: int
    max_nodes: int

    def __post_init__(self):
        if self.max_decides < 1 or self.max_nodes < 1:
            raise ModalInputError(f"Orçamento inválido: {self.max_decides},{self.max_nodes}")

    @classmethod
    def parse(cls, text: str) -> "SearchBudget":
        """Lê o formato D,N da linha de comando."""
        parts = text.split(",")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise ModalInputError(f"Orçamento deve ter a forma D,N: {text!r}")
        return cls(int(parts[0]), int(parts[1]))


@dataclass(frozen=True)
class NotFound:
    """Busca inconclusiva (não implica invalidade)."""
    reason: str


SearchResult = Union[LmfCert, NotFound]


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class _SearchState:
    depth: int = 0
    decided: FrozenSet[Tuple[Index, PolFormula]] = frozenset()
    witnessed: FrozenSet[Tuple[Index, PolFormula, int]] = frozenset()
    worlds: Tuple[int, ...] = ()


class SearchHooks(FpcHooks):
    """
    Ganchos que oferecem todas as escolhas legais.

    Cada fórmula armazenada é decidida no máximo uma vez por ramo, exceto as
    fórmulas ∃, que podem ser decididas uma vez para cada mundo próprio.
    """

    def __init__(self, max_decides: int, spent: List[int], max_nodes: int):
        self.max_decides = max_decides
        self.spent = spent
        self.max_nodes = max_nodes
        self.cutoff = False

    def _spend(self):
        self.spent[0] += 1
        if self.spent[0] > self.max_nodes:
            raise _BudgetExhausted()

    def all_c(self, cert: _SearchState, f: PolFormula, i: Index):
        return [lambda world: replace(cert, worlds=cert.worlds + (world,))]

    def and_pos_e(self, cert: _SearchState, f: PolFormula, i: Index):
        return [(cert, cert)]

    def or_pos_e(self, cert: _SearchState, f: PolFormula, i: Index):
        return [(1, cert), (2, cert)]

    def true_e(self, cert: _SearchState) -> bool:
        return True

    def release_e(self, cert: _SearchState, f: PolFormula, i: Index):
        return [cert]

    def some_e(self, cert: _SearchState, f: PolFormula, i: Index) -> Iterator[Tuple[int, _SearchState]]:
        for world in cert.worlds:
            key = (i, f, world)
            if key not in cert.witnessed:
                yield world, replace(cert, witnessed=cert.witnessed | {key})

    def init_e(self, cert: _SearchState, f: PolFormula, storage: Sequence[StoredEntry]) -> List[Index]:
        wanted = complement(f)
        found: List[Index] = []
        for entry in storage:
            if entry.formula == wanted and entry.index not in found:
                found.append(entry.index)
        return found

    def decide_e(self, cert: _SearchState, storage: Sequence[StoredEntry]) -> Iterator[Tuple[Index, _SearchState]]:
        if cert.depth >= self.max_decides:
            self.cutoff = True
            return
        for entry in storage:
            if not is_positive(entry.formula):
                continue
            key = (entry.index, entry.formula)
            if isinstance(entry.formula, Ex):
                if not cert.worlds:
                    continue
            elif key in cert.decided:
                continue
            self._spend()
            yield entry.index, replace(cert, depth=cert.depth + 1, decided=cert.decided | {key})


def search_lmf(goal: ModalFormula, budget: SearchBudget, kernel_limit: Optional[int] = None) -> SearchResult:
    """
    Procura um certificado LMF para goal com aprofundamento iterativo.

    Returns:
        LmfCert aceito por lmf_hooks, ou NotFound se o orçamento acabar
    """
    target = tr(goal, Const(0))
    spent = [0]
    for depth in range(1, budget.max_decides + 1):
        hooks = SearchHooks(depth, spent, budget.max_nodes)
        try:
            trace = Kernel(hooks, kernel_limit).check(_SearchState(), target)
        except EvidenceRejected:
            if not hooks.cutoff:
                # Espaço de busca esgotado sem atingir a profundidade
                return NotFound("espaço de busca esgotado")
            continue
        except _BudgetExhausted:
            logger.debug(f"Busca: orçamento de {budget.max_nodes} tentativas esgotado")
            return NotFound(f"orçamento de {budget.max_nodes} tentativas de decisão esgotado")
        except KernelLimitError as e:
            return NotFound(str(e))
        logger.debug(f"Busca: prova com profundidade {depth} após {spent[0]} tentativas")
        return certificate_from_trace(trace)
    return NotFound(f"nenhuma prova com até {budget.max_decides} decisões por ramo")


@dataclass
class _EventTree:
    event: TraceEvent
    children: List["_EventTree"]


def _arity(event: TraceEvent) -> int:
    if event.kind in (EventKind.AND_NEG, EventKind.AND_POS, EventKind.CUT):
        return 2
    if event.kind in (EventKind.INIT, EventKind.TRUE_POS):
        return 0
    return 1


def _event_tree(trace: ProofTrace) -> _EventTree:
    events = iter(trace)

    def parse() -> _EventTree:
        event = next(events)
        return _EventTree(event, [parse() for _ in range(_arity(event))])

    return parse()


def certificate_from_trace(trace: ProofTrace) -> LmfCert:
    """
    Reconstrói a árvore LMF a partir de um trace aceito.

    O trace é a pré-ordem da derivação; cada decide vira um nó. O extra de
    uma decisão ◇ é o índice da decisão cujo bipolo introduziu o mundo
    testemunha; o de um init é o índice do literal complementar.
    """
    tree = _event_tree(trace)
    box_of: Dict[str, Index] = {}

    def scan(node: _EventTree, current: Optional[Index]):
        if node.event.kind is EventKind.DECIDE:
            current = parse_index(node.event.arg)
        elif node.event.kind is EventKind.ALL:
            box_of[node.event.arg] = current
        for child in node.children:
            scan(child, current)

    scan(tree, None)

    def build(decide: _EventTree) -> LmfNode:
        extra: Optional[Index] = None
        children: List[LmfNode] = []

        def below(node: _EventTree):
            nonlocal extra
            for child in node.children:
                kind = child.event.kind
                if kind is EventKind.DECIDE:
                    children.append(build(child))
                    continue
                if kind is EventKind.SOME:
                    extra = box_of[child.event.arg]
                elif kind is EventKind.INIT and child.event.arg != str(RELIDX):
                    extra = parse_index(child.event.arg)
                below(child)

        below(decide)
        return LmfNode(parse_index(decide.event.arg), extra, tuple(children))

    node = tree
    while node.event.kind is not EventKind.DECIDE:
        node = node.children[0]
    return LmfCert(build(node))
