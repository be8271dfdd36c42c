"""
Camadas FPC sobre o kernel: LMF (foco único), LMFm (multi-foco simulado) e LMF* (presente/futuro).

Cada camada é um conjunto de ganchos mais um tipo de certificado; as
camadas superiores herdam das inferiores e só acrescentam restrições.
"""
from dataclasses import dataclass, replace
from typing import Callable, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from indices import Index, Left, RELIDX, ROOT, Right, mentions, try_resolve, world_of
from kernel import Cert, FpcHooks, StoredEntry
from modal_core import Box, Dia, ModalFormula
from polarized import PolFormula, Rel
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LmfNode:
    index: Index
    extra: Optional[Index] = None
    children: Tuple["LmfNode", ...] = ()


@dataclass(frozen=True)
class LmfmNode:
    index: Index
    group: int
    extra: Optional[Index] = None
    children: Tuple["LmfmNode", ...] = ()


@dataclass(frozen=True)
class StarNode:
    index: Index
    group: int
    present: FrozenSet[Index]
    extra: Optional[Index] = None
    future: Optional[Index] = None
    children: Tuple["StarNode", ...] = ()


AnyNode = Union[LmfNode, LmfmNode, StarNode]
EigenMap = Tuple[Tuple[Index, int], ...]


@dataclass(frozen=True)
class LmfCert:
    tree: LmfNode
    state: EigenMap = ()


@dataclass(frozen=True)
class LmfmCert:
    tree: LmfmNode
    state: EigenMap = ()


@dataclass(frozen=True)
class StarCert:
    """Certificado LMF*; a fórmula modal é necessária para saber quais índices criam mundos."""
    tree: StarNode
    goal: ModalFormula
    state: EigenMap = ()


@dataclass(frozen=True)
class StarSide:
    """Estado lateral de star_to_multifoc: decorações em pré-ordem."""
    goal: ModalFormula
    decorations: Tuple[Tuple[FrozenSet[Index], Optional[Index]], ...]


def preorder(node: AnyNode) -> Iterator[AnyNode]:
    yield node
    for child in node.children:
        yield from preorder(child)


def count_nodes(node: AnyNode) -> int:
    return sum(1 for _ in preorder(node))


def _walk(forest: Sequence[AnyNode]) -> Iterator[AnyNode]:
    for node in forest:
        yield from preorder(node)


@dataclass(frozen=True)
class LayerState:
    """Cursor de execução de um certificado de camada durante uma verificação."""
    eigen: EigenMap = ()
    focus: Optional[AnyNode] = None
    forest: Tuple[AnyNode, ...] = ()
    # LMFm
    group: Optional[int] = None
    closed: FrozenSet[int] = frozenset()
    validated: bool = False
    # LMF*
    goal: Optional[ModalFormula] = None
    present: FrozenSet[Index] = frozenset({ROOT})
    block_present: FrozenSet[Index] = frozenset({ROOT})


def _splits(forest: Tuple[AnyNode, ...]) -> List[Tuple[Tuple[AnyNode, ...], Tuple[AnyNode, ...]]]:
    return [(forest[:s], forest[s:]) for s in range(len(forest) + 1)]


class LmfHooks(FpcHooks):
    """
    Camada LMF: cada nó da árvore é uma decisão.

    O índice do nó escolhe a fórmula; o índice extra dá o □ correspondente
    (para ∃) ou o literal complementar (para init).
    """

    def begin(self, cert: Cert) -> LayerState:
        return LayerState(eigen=getattr(cert, "state", ()), forest=(cert.tree,))

    def and_neg_c(self, cert: LayerState, f: PolFormula, i: Index):
        return [
            (replace(cert, forest=first), replace(cert, forest=second))
            for first, second in _splits(cert.forest)
        ]

    def all_c(self, cert: LayerState, f: PolFormula, i: Index):
        return [lambda world: replace(cert, eigen=cert.eigen + ((i, world),))]

    def and_pos_e(self, cert: LayerState, f: PolFormula, i: Index):
        return [
            (replace(cert, forest=first), replace(cert, forest=second))
            for first, second in _splits(cert.forest)
        ]

    def or_pos_e(self, cert: LayerState, f: PolFormula, i: Index):
        sides = [
            side
            for side, target in ((1, Left(i)), (2, Right(i)))
            if any(
                mentions(node.index, target) or (node.extra is not None and mentions(node.extra, target))
                for node in _walk(cert.forest)
            )
        ]
        return [(side, cert) for side in sides or [1, 2]]

    def true_e(self, cert: LayerState) -> bool:
        return not cert.forest

    def some_e(self, cert: LayerState, f: PolFormula, i: Index):
        node = cert.focus
        if node is None or node.extra is None:
            return []
        return [(world, cert) for index, world in cert.eigen if index == node.extra]

    def init_e(self, cert: LayerState, f: PolFormula, storage: Sequence[StoredEntry]):
        if cert.forest:
            return []
        if isinstance(f, Rel):
            return [RELIDX]
        node = cert.focus
        if node is None or node.extra is None:
            return []
        return [node.extra]

    def release_e(self, cert: LayerState, f: PolFormula, i: Index):
        return [cert]

    def decide_e(self, cert: LayerState, storage: Sequence[StoredEntry]):
        if len(cert.forest) != 1:
            return []
        node = cert.forest[0]
        return [(node.index, replace(cert, focus=node, forest=node.children))]


def group_violation(tree: AnyNode) -> Optional[str]:
    """
    Verifica estaticamente os grupos de multi-foco.

    Cada grupo deve formar um único bloco contíguo ao longo de uma cadeia
    (sem atravessar nós com ramificação).
    """
    started = set()

    def visit(node: AnyNode, parent_group: Optional[int]) -> Optional[str]:
        if node.group != parent_group:
            if node.group in started:
                return f"grupo {node.group} reaparece em {node.index}"
            started.add(node.group)
        same = [c for c in node.children if c.group == node.group]
        if same and len(node.children) > 1:
            return f"grupo {node.group} atravessa a ramificação em {node.index}"
        for child in node.children:
            problem = visit(child, node.group)
            if problem:
                return problem
        return None

    return visit(tree, None)


class LmfmHooks(LmfHooks):
    """Camada LMFm: nós com o mesmo grupo são decididos em sequência."""

    def and_neg_c(self, cert: LayerState, f: PolFormula, i: Index):
        closed = cert.closed | ({cert.group} if cert.group is not None else set())
        closed_state = replace(cert, group=None, closed=frozenset(closed))
        return super().and_neg_c(closed_state, f, i)

    def decide_e(self, cert: LayerState, storage: Sequence[StoredEntry]):
        if len(cert.forest) != 1:
            return []
        node = cert.forest[0]
        if not cert.validated:
            problem = group_violation(node)
            if problem:
                logger.debug(f"LMFm: {problem}")
                return []
            cert = replace(cert, validated=True)
        if node.group != cert.group:
            if node.group in cert.closed:
                logger.debug(f"LMFm: grupo {node.group} já encerrado")
                return []
            closed = cert.closed | ({cert.group} if cert.group is not None else set())
            cert = replace(cert, group=node.group, closed=frozenset(closed))
        return super().decide_e(cert, storage)


class StarHooks(LmfmHooks):
    """
    Camada LMF*: restrições de presente e futuro.

    A premissa de cada decisão herda o presente do nó anterior (ou do início
    do bloco, dentro de um grupo de multi-foco); o mundo da fórmula decidida
    precisa pertencer a esse presente.
    Um grupo com mais de um nó só reúne ◇ com o mesmo futuro.
    """

    def begin(self, cert: Cert) -> LayerState:
        state = super().begin(cert)
        return replace(state, goal=cert.goal)

    def _creates_world(self, goal: ModalFormula) -> Callable[[Index], bool]:
        return lambda j: isinstance(try_resolve(goal, j), Box)

    def decide_e(self, cert: LayerState, storage: Sequence[StoredEntry]):
        if len(cert.forest) != 1:
            return []
        node = cert.forest[0]
        continuing = node.group == cert.group
        conclusion = cert.block_present if continuing else cert.present
        if not node.present:
            logger.debug(f"LMF*: presente vazio em {node.index}")
            return []
        if try_resolve(cert.goal, node.index) is None:
            return []
        world = world_of(node.index, self._creates_world(cert.goal))
        if world not in conclusion:
            logger.debug(f"LMF*: mundo {world} de {node.index} fora do presente")
            return []
        if node.future is not None and (node.future not in node.present or node.future != node.extra):
            logger.debug(f"LMF*: futuro {node.future} incompatível em {node.index}")
            return []
        if continuing or any(child.group == node.group for child in node.children):
            problem = self._multifocus_problem(cert, node, continuing)
            if problem:
                logger.debug(f"LMF*: {problem}")
                return []
        return [
            (index, replace(state, present=node.present, block_present=conclusion))
            for index, state in super().decide_e(cert, storage)
        ]

    def _multifocus_problem(self, cert: LayerState, node: StarNode, continuing: bool) -> Optional[str]:
        # Só ◇ com o mesmo futuro entram juntos no novo mundo
        if not isinstance(try_resolve(cert.goal, node.index), Dia):
            return f"{node.index} não é ◇ e está em grupo de multi-foco"
        if node.future is None:
            return f"◇ {node.index} sem futuro em grupo de multi-foco"
        if continuing and cert.focus is not None and cert.focus.future != node.future:
            return f"futuros diferentes no grupo {node.group} em {node.index}"
        return None

    def some_e(self, cert: LayerState, f: PolFormula, i: Index):
        node = cert.focus
        if node is not None and node.future is not None and node.future != node.extra:
            return []
        return super().some_e(cert, f, i)


def lmf_hooks() -> LmfHooks:
    return LmfHooks()


def lmfm_hooks() -> LmfmHooks:
    return LmfmHooks()


def star_hooks() -> StarHooks:
    return StarHooks()


# Traduções entre camadas

def erase_groups(c: LmfmCert) -> LmfCert:
    def strip(node: AnyNode) -> LmfNode:
        return LmfNode(node.index, node.extra, tuple(strip(child) for child in node.children))

    return LmfCert(strip(c.tree), c.state)


def lmf_to_lmfm(c: LmfCert) -> LmfmCert:
    """Grupos unitários em pré-ordem."""
    counter = iter(range(1, count_nodes(c.tree) + 1))

    def label(node: LmfNode) -> LmfmNode:
        group = next(counter)
        return LmfmNode(node.index, group, node.extra, tuple(label(child) for child in node.children))

    return LmfmCert(label(c.tree), c.state)


def star_to_multifoc(c: StarCert) -> Tuple[LmfmCert, StarSide]:
    decorations = tuple((node.present, node.future) for node in preorder(c.tree))

    def strip(node: StarNode) -> LmfmNode:
        return LmfmNode(node.index, node.group, node.extra, tuple(strip(child) for child in node.children))

    return LmfmCert(strip(c.tree), c.state), StarSide(c.goal, decorations)


def multifoc_to_star(c: LmfmCert, side: StarSide) -> StarCert:
    decorations = iter(side.decorations)

    def dress(node: LmfmNode) -> StarNode:
        present, future = next(decorations)
        return StarNode(
            node.index, node.group, present, node.extra, future,
            tuple(dress(child) for child in node.children),
        )

    if count_nodes(c.tree) != len(side.decorations):
        raise ValueError("Número de decorações diferente do número de nós")
    return StarCert(dress(c.tree), side.goal, c.state)
