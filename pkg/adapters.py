"""Evidências de LS, PT, OS e NS e sua tradução para certificados das camadas."""
from dataclasses import dataclass
from itertools import count
from typing import Dict, FrozenSet, List, Optional, Tuple

from exceptions import AdapterError
from indices import (
    Chld, DiaInd, Index, IndexMap, Left, NsIndex, ROOT, Right, SeqIndex,
    resolve, try_resolve, world_of,
)
from layers import AnyNode, LmfCert, LmfNode, StarCert, StarNode, preorder
from modal_core import And, Atom, Box, Dia, ModalFormula, NAtom, Or, is_literal
from polarized import Const, PolFormula, tr
from utils.logger import get_logger

logger = get_logger(__name__)

ROOT_WORLD = Const(0)

# Evidência LS tem o mesmo formato da árvore LMF
LsNode = LmfNode


@dataclass(frozen=True)
class PtNode:
    """Aplicação de regra do tableau, endereçada sobre a fórmula negada."""
    index: Index
    extra: Optional[Index] = None
    children: Tuple["PtNode", ...] = ()


@dataclass(frozen=True)
class OsNode:
    index: Index
    extras: Tuple[Index, ...] = ()
    children: Tuple["OsNode", ...] = ()


@dataclass(frozen=True)
class NsNode:
    index: NsIndex
    extra: Optional[NsIndex] = None
    children: Tuple["NsNode", ...] = ()


def _is_box(goal: ModalFormula):
    return lambda j: isinstance(try_resolve(goal, j), Box)


def _complementary(a: ModalFormula, b: ModalFormula) -> bool:
    return (
        (isinstance(a, Atom) and isinstance(b, NAtom) or isinstance(a, NAtom) and isinstance(b, Atom))
        and a.name == b.name
    )


def _orient(goal: ModalFormula, index: Index, other: Index) -> Tuple[Index, Index]:
    """Coloca o literal positivo (o decidido) primeiro."""
    return (other, index) if isinstance(resolve(goal, index), NAtom) else (index, other)


def correspondence_violations(tree: AnyNode, goal: ModalFormula) -> List[str]:
    """Índices (principal, extra e futuro) que não endereçam subfórmulas da fórmula."""
    problems = []
    for node in preorder(tree):
        for label, index in (("index", node.index), ("extra", node.extra), ("future", getattr(node, "future", None))):
            if index is None:
                continue
            try:
                resolve(goal, index)
            except AdapterError as e:
                problems.append(f"{label} {index}: {e}")
    return problems


def ls_to_lmf(e: LsNode, goal: ModalFormula) -> LmfCert:
    """
    Evidência de sequentes rotulados para LMF (identidade estrutural validada).

    Raises:
        AdapterError: índice pendente ou ◇ cujo extra não é um □
    """
    def visit(node: LsNode) -> LsNode:
        f = resolve(goal, node.index)
        if isinstance(f, Dia):
            if node.extra is None or not isinstance(resolve(goal, node.extra), Box):
                raise AdapterError(f"◇ em {node.index} precisa de um □ correspondente como extra")
        elif is_literal(f):
            if node.extra is not None:
                resolve(goal, node.extra)
        elif node.extra is not None:
            raise AdapterError(f"Índice extra inesperado em {node.index}")
        for child in node.children:
            visit(child)
        return node

    return LmfCert(visit(e))


def pt_to_lmf(e: PtNode, goal: ModalFormula) -> Tuple[LmfCert, PolFormula]:
    """
    Tableau prefixado fechado para LMF.

    O tableau parte da negação da fórmula; as expansões ◇ do tableau viram
    decisões □ e as expansões □ viram decisões ◇. Os índices coincidem
    porque a negação em NNF preserva a forma.

    Returns:
        (certificado LMF, tr(goal, w0))
    """
    is_box = _is_box(goal)

    def visit(node: PtNode, prefixes: FrozenSet[Index]) -> LmfNode:
        f = resolve(goal, node.index)
        extra = node.extra
        index = node.index
        if isinstance(f, Box):
            if extra is not None:
                raise AdapterError(f"Expansão ◇ em {index} não leva extra")
            prefixes = prefixes | {index}
        elif isinstance(f, Dia):
            if extra is None or extra not in prefixes:
                raise AdapterError(f"Expansão □ em {index} referencia prefixo nunca criado: {extra}")
        elif is_literal(f):
            if extra is None:
                raise AdapterError(f"Literal em {index} sem fechamento")
            if node.children:
                raise AdapterError(f"Fechamento em {index} não pode ter filhos")
            other = resolve(goal, extra)
            if not _complementary(f, other):
                raise AdapterError(f"Fechamento em {index} com literais não complementares")
            if world_of(index, is_box) != world_of(extra, is_box):
                raise AdapterError(f"Fechamento em {index} com literais em prefixos diferentes")
            index, extra = _orient(goal, index, extra)
        elif extra is not None:
            raise AdapterError(f"Índice extra inesperado em {index}")
        return LmfNode(index, extra, tuple(visit(child, prefixes) for child in node.children))

    return LmfCert(visit(e, frozenset())), tr(goal, ROOT_WORLD)


def os_to_star(e: OsNode, goal: ModalFormula) -> StarCert:
    """
    Evidência de sequentes ordinários para LMF*.

    Cada □ com extras d1..dk vira uma decisão □ seguida de k decisões ◇ num
    mesmo grupo, todas com extra, futuro e presente iguais ao índice do □.
    Grupos são atribuídos em pré-ordem.
    """
    groups = count(1)

    def visit(node: OsNode, present: FrozenSet[Index]) -> StarNode:
        f = resolve(goal, node.index)
        group = next(groups)
        if isinstance(f, Box):
            box = node.index
            for d in node.extras:
                if not isinstance(resolve(goal, d), Dia):
                    raise AdapterError(f"Extra {d} do □ em {box} não é uma fórmula ◇")
            dia_group = next(groups) if node.extras else None
            world = frozenset({box})
            chain: Tuple[StarNode, ...] = tuple(visit(child, world) for child in node.children)
            for d in reversed(node.extras):
                chain = (StarNode(d, dia_group, world, extra=box, future=box, children=chain),)
            return StarNode(box, group, present if node.extras else world, children=chain)
        if is_literal(f):
            if len(node.extras) != 1:
                raise AdapterError(f"Init em {node.index} precisa de exatamente um extra")
            if node.children:
                raise AdapterError(f"Init em {node.index} não pode ter filhos")
            resolve(goal, node.extras[0])
            index, extra = _orient(goal, node.index, node.extras[0])
            return StarNode(index, group, present, extra=extra)
        if isinstance(f, Dia):
            raise AdapterError(f"Sequentes ordinários não têm regra ◇ isolada ({node.index})")
        if node.extras:
            raise AdapterError(f"Extras inesperados em {node.index}")
        return StarNode(node.index, group, present, children=tuple(visit(child, present) for child in node.children))

    return StarCert(visit(e, frozenset({ROOT})), goal)


def _rename(i: Index, renames: Dict[Index, Index]) -> Index:
    if i in renames:
        return renames[i]
    if isinstance(i, Left):
        return Left(_rename(i.inner, renames))
    if isinstance(i, Right):
        return Right(_rename(i.inner, renames))
    return i


def reindex_basic(e: OsNode, goal: ModalFormula) -> OsNode:
    """
    Converte evidência OS de indexação básica para indexação por correspondência.

    No □ de índice J com extras d1..dk, o corpo left(d) de cada ◇ passa a
    diaind(d, J) em toda a subárvore.
    """
    def visit(node: OsNode, renames: Dict[Index, Index]) -> OsNode:
        index = _rename(node.index, renames)
        extras = tuple(_rename(d, renames) for d in node.extras)
        f = resolve(goal, index)
        if isinstance(f, Box) and extras:
            renames = dict(renames)
            for basic, full in zip(node.extras, extras):
                renames[Left(basic)] = DiaInd(full, index)
        return OsNode(index, extras, tuple(visit(child, renames) for child in node.children))

    return visit(e, {})


def ns_to_lmf(e: NsNode, goal: ModalFormula) -> LmfCert:
    """
    Evidência de sequentes aninhados para LMF.

    Mantém um mapa bijetivo entre índices aninhados e índices LMF: cada □
    cria o sequente filho chld(n, S), com n contando os □ já aplicados em S
    no ramo; cada ◇ leva seu corpo para diaind(I, J), onde J é o □ que criou
    o sequente de destino.
    """

    def visit(
        node: NsNode,
        mapping: IndexMap,
        owners: Dict[SeqIndex, Index],
        created: Dict[SeqIndex, int],
    ) -> LmfNode:
        j = mapping.lookup(node.index)
        f = resolve(goal, j)
        pos, seq = node.index.pos, node.index.seq
        extra: Optional[Index] = None
        if isinstance(f, (And, Or)):
            mapping = mapping.extend(NsIndex(Left(pos), seq), Left(j))
            mapping = mapping.extend(NsIndex(Right(pos), seq), Right(j))
        elif isinstance(f, Box):
            position = created.get(seq, 0) + 1
            child_seq = Chld(position, seq)
            created = {**created, seq: position}
            owners = {**owners, child_seq: j}
            mapping = mapping.extend(NsIndex(Left(pos), child_seq), Left(j))
        elif isinstance(f, Dia):
            target = node.extra
            if target is None:
                raise AdapterError(f"◇ em {node.index} sem sequente de destino")
            if target.seq not in owners:
                raise AdapterError(f"Índice aninhado não mapeado: {target} (sequente nunca criado por um □)")
            if not isinstance(target.seq, Chld) or target.seq.parent != seq or target.pos != Left(pos):
                raise AdapterError(f"◇ em {node.index} não pode levar o corpo para {target}")
            extra = owners[target.seq]
            mapping = mapping.extend(target, DiaInd(j, extra))
        else:
            if node.extra is None:
                raise AdapterError(f"Init em {node.index} sem literal complementar")
            other = mapping.lookup(node.extra)
            resolve(goal, other)
            j, extra = _orient(goal, j, other)
        children = tuple(visit(child, mapping, owners, created) for child in node.children)
        return LmfNode(j, extra, children)

    return LmfCert(visit(e, IndexMap.seed(), {}, {}))
