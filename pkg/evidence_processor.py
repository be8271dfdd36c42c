"""Leitura, validação e serialização de arquivos de evidência."""
import json
from pathlib import Path
from typing import Callable, Optional, Union

from pydantic import ValidationError

from adapters import NsNode, OsNode, PtNode
from exceptions import EvidenceSchemaError, ModalInputError
from formula_parser import parse_formula
from indices import Index, NsIndex, parse_index, parse_seq
from layers import LmfCert, LmfmCert, LmfNode, LmfmNode, StarCert, StarNode
from models.evidence import EvidenceFile, EvidenceFormat, NsIndexModel, ProofNode
from modal_core import ModalFormula
from utils.logger import get_logger

logger = get_logger(__name__)


def parse_evidence(text: str) -> EvidenceFile:
    """
    Lê e valida o texto JSON de uma evidência.

    Raises:
        EvidenceSchemaError: JSON inválido (com linha e coluna), formato
            desconhecido ou campos inválidos (com o caminho do campo)
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise EvidenceSchemaError(f"JSON inválido na linha {e.lineno}, coluna {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise EvidenceSchemaError("A evidência deve ser um objeto JSON")
    declared = data.get("format")
    if declared is not None and declared not in {f.value for f in EvidenceFormat}:
        raise EvidenceSchemaError(f"Formato desconhecido: {declared!r}")
    try:
        return EvidenceFile.parse_evidence_dict(data)
    except ValidationError as e:
        raise EvidenceSchemaError(_describe(e)) from None


def _describe(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"])
        message = item["msg"]
        problems.append(f"{location}: {message}" if location else message)
    return "Evidência inválida: " + "; ".join(problems)


def load_evidence(path: Union[str, Path]) -> EvidenceFile:
    """
    Lê uma evidência de um arquivo.

    Raises:
        ModalInputError: arquivo inexistente ou ilegível
        EvidenceSchemaError: conteúdo inválido
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ModalInputError(f"Não foi possível ler {path}: {e.strerror or e}") from None
    logger.debug(f"Evidência lida de {path}")
    return parse_evidence(text)


def serialize_evidence(e: EvidenceFile) -> str:
    """JSON canônico com indentação de dois espaços e quebra de linha final."""
    return json.dumps(e.to_json_dict(), indent=2, ensure_ascii=False) + "\n"


def evidence_goal(e: EvidenceFile) -> ModalFormula:
    try:
        return parse_formula(e.formula)
    except ModalInputError as error:
        raise ModalInputError(f"formula: {error}") from None


# Conversão modelo JSON -> árvores do domínio

def _index(text: str, path: str) -> Index:
    try:
        return parse_index(text)
    except ModalInputError as error:
        raise EvidenceSchemaError(f"{path}: {error}") from None


def _optional_index(text: Optional[str], path: str) -> Optional[Index]:
    return None if text is None else _index(text, path)


def _ns_index(value: NsIndexModel, path: str) -> NsIndex:
    try:
        return NsIndex(parse_index(value.pos), parse_seq(value.seq))
    except ModalInputError as error:
        raise EvidenceSchemaError(f"{path}: {error}") from None


def _children(node: ProofNode, path: str, build: Callable[[ProofNode, str], object]) -> tuple:
    return tuple(build(child, f"{path}.children[{n}]") for n, child in enumerate(node.children))


def to_lmf_node(node: ProofNode, path: str = "proof") -> LmfNode:
    return LmfNode(
        _index(node.index, f"{path}.index"),
        _optional_index(node.extra, f"{path}.extra"),
        _children(node, path, to_lmf_node),
    )


def to_pt_node(node: ProofNode, path: str = "proof") -> PtNode:
    return PtNode(
        _index(node.index, f"{path}.index"),
        _optional_index(node.extra, f"{path}.extra"),
        _children(node, path, to_pt_node),
    )


def to_lmfm_node(node: ProofNode, path: str = "proof") -> LmfmNode:
    return LmfmNode(
        _index(node.index, f"{path}.index"),
        node.group,
        _optional_index(node.extra, f"{path}.extra"),
        _children(node, path, to_lmfm_node),
    )


def to_star_node(node: ProofNode, path: str = "proof") -> StarNode:
    present = frozenset(_index(text, f"{path}.present[{n}]") for n, text in enumerate(node.present or []))
    return StarNode(
        _index(node.index, f"{path}.index"),
        node.group,
        present,
        _optional_index(node.extra, f"{path}.extra"),
        _optional_index(node.future, f"{path}.future"),
        _children(node, path, to_star_node),
    )


def to_os_node(node: ProofNode, path: str = "proof") -> OsNode:
    extras = tuple(_index(text, f"{path}.extras[{n}]") for n, text in enumerate(node.extras or []))
    return OsNode(_index(node.index, f"{path}.index"), extras, _children(node, path, to_os_node))


def to_ns_node(node: ProofNode, path: str = "proof") -> NsNode:
    extra = None if node.extra is None else _ns_index(node.extra, f"{path}.extra")
    return NsNode(_ns_index(node.index, f"{path}.index"), extra, _children(node, path, to_ns_node))


# Conversão árvores do domínio -> modelo JSON

def _from_lmf(node: LmfNode) -> ProofNode:
    return ProofNode(
        index=str(node.index),
        extra=None if node.extra is None else str(node.extra),
        children=[_from_lmf(child) for child in node.children],
    )


def _from_lmfm(node: LmfmNode) -> ProofNode:
    return ProofNode(
        index=str(node.index),
        extra=None if node.extra is None else str(node.extra),
        group=node.group,
        children=[_from_lmfm(child) for child in node.children],
    )


def _from_star(node: StarNode) -> ProofNode:
    return ProofNode(
        index=str(node.index),
        extra=None if node.extra is None else str(node.extra),
        group=node.group,
        present=sorted(str(i) for i in node.present),
        future=None if node.future is None else str(node.future),
        children=[_from_star(child) for child in node.children],
    )


def certificate_to_evidence(cert: Union[LmfCert, LmfmCert, StarCert], formula: str) -> EvidenceFile:
    """Empacota um certificado de camada como arquivo de evidência."""
    if isinstance(cert, StarCert):
        return EvidenceFile(format=EvidenceFormat.LMFSTAR, formula=formula, proof=_from_star(cert.tree))
    if isinstance(cert, LmfmCert):
        return EvidenceFile(format=EvidenceFormat.LMFM, formula=formula, proof=_from_lmfm(cert.tree))
    return EvidenceFile(format=EvidenceFormat.LMF, formula=formula, proof=_from_lmf(cert.tree))
