"""Sintaxe modal em forma normal negativa, semântica de Kripke e oráculo de validade para K."""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from config import get_settings
from exceptions import ModalInputError, OracleLimitError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class NAtom:
    name: str


@dataclass(frozen=True)
class And:
    left: "ModalFormula"
    right: "ModalFormula"


@dataclass(frozen=True)
class Or:
    left: "ModalFormula"
    right: "ModalFormula"


@dataclass(frozen=True)
class Box:
    body: "ModalFormula"


@dataclass(frozen=True)
class Dia:
    body: "ModalFormula"


ModalFormula = Union[Atom, NAtom, And, Or, Box, Dia]


def negate_nnf(a: ModalFormula) -> ModalFormula:
    """Dual de De Morgan de uma fórmula em NNF (átomo↔negado, ∧↔∨, □↔◇)."""
    if isinstance(a, Atom):
        return NAtom(a.name)
    if isinstance(a, NAtom):
        return Atom(a.name)
    if isinstance(a, And):
        return Or(negate_nnf(a.left), negate_nnf(a.right))
    if isinstance(a, Or):
        return And(negate_nnf(a.left), negate_nnf(a.right))
    if isinstance(a, Box):
        return Dia(negate_nnf(a.body))
    if isinstance(a, Dia):
        return Box(negate_nnf(a.body))
    raise ModalInputError(f"Fórmula modal desconhecida: {a!r}")


def is_literal(a: ModalFormula) -> bool:
    return isinstance(a, (Atom, NAtom))


def modal_depth(a: ModalFormula) -> int:
    if isinstance(a, (Atom, NAtom)):
        return 0
    if isinstance(a, (And, Or)):
        return max(modal_depth(a.left), modal_depth(a.right))
    return 1 + modal_depth(a.body)


def connective_count(a: ModalFormula) -> int:
    """Número de conectivos, contando a negação de átomo como conectivo."""
    if isinstance(a, Atom):
        return 0
    if isinstance(a, NAtom):
        return 1
    if isinstance(a, (And, Or)):
        return 1 + connective_count(a.left) + connective_count(a.right)
    return 1 + connective_count(a.body)


@dataclass(frozen=True)
class KripkeModel:
    """Modelo de Kripke finito; mundos não mapeados em val têm valoração vazia."""
    worlds: FrozenSet[int]
    rel: FrozenSet[Tuple[int, int]] = frozenset()
    val: Mapping[int, FrozenSet[str]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if not self.worlds:
            raise ModalInputError("Modelo de Kripke sem mundos")
        for src, dst in self.rel:
            if src not in self.worlds or dst not in self.worlds:
                raise ModalInputError(f"Aresta ({src}, {dst}) referencia mundo inexistente")
        for world in self.val:
            if world not in self.worlds:
                raise ModalInputError(f"Valoração referencia mundo inexistente: {world}")

    def successors(self, w: int) -> List[int]:
        return sorted(dst for src, dst in self.rel if src == w)

    def true_atoms(self, w: int) -> FrozenSet[str]:
        return frozenset(self.val.get(w, frozenset()))


def evaluate(m: KripkeModel, w: int, a: ModalFormula) -> bool:
    """
    Avalia a fórmula no mundo w do modelo.

    Raises:
        ModalInputError: se w não pertence ao modelo
    """
    if w not in m.worlds:
        raise ModalInputError(f"Mundo desconhecido: {w}")
    return _evaluate(m, w, a)


def _evaluate(m: KripkeModel, w: int, a: ModalFormula) -> bool:
    if isinstance(a, Atom):
        return a.name in m.true_atoms(w)
    if isinstance(a, NAtom):
        return a.name not in m.true_atoms(w)
    if isinstance(a, And):
        return _evaluate(m, w, a.left) and _evaluate(m, w, a.right)
    if isinstance(a, Or):
        return _evaluate(m, w, a.left) or _evaluate(m, w, a.right)
    if isinstance(a, Box):
        return all(_evaluate(m, v, a.body) for v in m.successors(w))
    return any(_evaluate(m, v, a.body) for v in m.successors(w))


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    world: int


ValidityResult = Union[Valid, Countermodel]


@dataclass
class _TreeWorld:
    atoms: FrozenSet[str]
    children: List["_TreeWorld"]


class _TableauSearch:
    """
    Busca de modelo em árvore para a negação da fórmula.

    A profundidade da árvore nunca passa da profundidade modal e cada nó tem
    no máximo um filho por ◇-subfórmula, então a busca é completa para K.

    max_depth e max_branching restringem a árvore procurada; None não restringe.
    """

    def __init__(self, limit: int):
        self.limit = limit
        self.visited = 0
        self.max_depth: Optional[int] = None
        self.max_branching: Optional[int] = None

    def _tick(self):
        self.visited += 1
        if self.visited > self.limit:
            raise OracleLimitError(f"Oráculo excedeu {self.limit} nós visitados")

    def _room(self, level: int, successors: int) -> bool:
        if self.max_depth is not None and level >= self.max_depth:
            return False
        return self.max_branching is None or successors <= self.max_branching

    def satisfy(self, formulas: Iterable[ModalFormula]) -> Optional[_TreeWorld]:
        return self._saturate(list(formulas), frozenset(), frozenset(), (), (), 0)

    def _saturate(
        self,
        todo: List[ModalFormula],
        pos: FrozenSet[str],
        neg: FrozenSet[str],
        boxes: Tuple[ModalFormula, ...],
        dias: Tuple[ModalFormula, ...],
        level: int,
    ) -> Optional[_TreeWorld]:
        self._tick()
        while todo:
            a = todo.pop(0)
            if isinstance(a, Atom):
                if a.name in neg:
                    return None
                pos = pos | {a.name}
            elif isinstance(a, NAtom):
                if a.name in pos:
                    return None
                neg = neg | {a.name}
            elif isinstance(a, And):
                todo = [a.left, a.right] + todo
            elif isinstance(a, Or):
                for branch in (a.left, a.right):
                    found = self._saturate([branch] + todo, pos, neg, boxes, dias, level)
                    if found is not None:
                        return found
                return None
            elif isinstance(a, Box):
                if a.body not in boxes:
                    boxes = boxes + (a.body,)
            elif a.body not in dias:
                dias = dias + (a.body,)

        if dias and not self._room(level, len(dias)):
            return None
        children = []
        for body in dias:
            child = self._saturate([body, *boxes], frozenset(), frozenset(), (), (), level + 1)
            if child is None:
                return None
            children.append(child)
        return _TreeWorld(atoms=pos, children=children)


def _diamond_count(a: ModalFormula) -> int:
    if isinstance(a, (Atom, NAtom)):
        return 0
    if isinstance(a, (And, Or)):
        return _diamond_count(a.left) + _diamond_count(a.right)
    return int(isinstance(a, Dia)) + _diamond_count(a.body)


def _smallest_tree(search: _TableauSearch, negated: ModalFormula, found: _TreeWorld) -> _TreeWorld:
    """Refaz a busca por profundidade crescente e, dentro dela, por ramificação crescente."""
    for depth in range(modal_depth(negated) + 1):
        for branching in range(_diamond_count(negated) + 1):
            search.max_depth, search.max_branching = depth, branching
            tree = search.satisfy([negated])
            if tree is not None:
                return tree
    return found


def _to_model(root: _TreeWorld) -> KripkeModel:
    worlds: List[int] = []
    rel: List[Tuple[int, int]] = []
    val: Dict[int, FrozenSet[str]] = {}

    def visit(node: _TreeWorld) -> int:
        wid = len(worlds)
        worlds.append(wid)
        if node.atoms:
            val[wid] = node.atoms
        for child in node.children:
            rel.append((wid, visit(child)))
        return wid

    visit(root)
    return KripkeModel(worlds=frozenset(worlds), rel=frozenset(rel), val=val)


def decide_validity(a: ModalFormula, limit: Optional[int] = None) -> ValidityResult:
    """
    Decide a validade de a em K.

    Args:
        a: Fórmula em NNF
        limit: Máximo de nós visitados (padrão: settings.oracle_limit)

    Returns:
        Valid, ou Countermodel com o mundo 0 falsificando a; entre os modelos
        em árvore do tableau, o de menor profundidade e depois o de menor
        ramificação

    Raises:
        OracleLimitError: se o limite de nós for excedido
    """
    limit = limit if limit is not None else get_settings().oracle_limit
    search = _TableauSearch(limit)
    negated = negate_nnf(a)
    tree = search.satisfy([negated])
    if tree is None:
        logger.debug(f"Oráculo: fórmula válida ({search.visited} nós)")
        return Valid()
    model = _to_model(_smallest_tree(search, negated, tree))
    logger.debug(f"Oráculo: contramodelo com {len(model.worlds)} mundos ({search.visited} nós)")
    return Countermodel(model=model, world=0)
