"""Serviço de verificação: adapta a evidência, escolhe os ganchos e roda o kernel."""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from adapters import (
    ROOT_WORLD, correspondence_violations, ls_to_lmf, ns_to_lmf, os_to_star,
    pt_to_lmf, reindex_basic,
)
from evidence_processor import (
    certificate_to_evidence, evidence_goal, to_lmf_node, to_lmfm_node, to_ns_node,
    to_os_node, to_pt_node, to_star_node,
)
from exceptions import AdapterError, EvidenceRejected, ModalInputError
from indices import RELIDX
from kernel import EventKind, FpcHooks, Kernel, ProofTrace
from layers import (
    LmfCert, LmfmCert, StarCert, erase_groups, lmf_hooks, lmf_to_lmfm, lmfm_hooks,
    star_hooks, star_to_multifoc,
)
from modal_core import Countermodel, ModalFormula, decide_validity
from models.evidence import EvidenceFile, EvidenceFormat, Indexing
from polarized import PolFormula, tr
from utils.logger import get_logger

logger = get_logger(__name__)

LayerCert = Union[LmfCert, LmfmCert, StarCert]


class Layer(str, Enum):
    """Camadas de destino do subcomando translate."""
    LMF = "lmf"
    LMFM = "lmfm"
    LMFSTAR = "lmfstar"


@dataclass(frozen=True)
class CheckReport:
    """Resultado de uma verificação aceita."""
    format: EvidenceFormat
    trace: ProofTrace
    decides: int
    inits: int
    relational_inits: int


def layer_certificate(e: EvidenceFile, goal: ModalFormula) -> Tuple[LayerCert, PolFormula]:
    """
    Traduz a evidência para o certificado da camada correspondente.

    Returns:
        (certificado, fórmula polarizada a verificar)

    Raises:
        AdapterError: evidência inconsistente com a fórmula
    """
    target = tr(goal, ROOT_WORLD)
    fmt = e.format
    if fmt is EvidenceFormat.LS:
        return ls_to_lmf(to_lmf_node(e.proof), goal), target
    if fmt is EvidenceFormat.PT:
        return pt_to_lmf(to_pt_node(e.proof), goal)
    if fmt is EvidenceFormat.NS:
        return ns_to_lmf(to_ns_node(e.proof), goal), target
    if fmt is EvidenceFormat.OS:
        evidence = to_os_node(e.proof)
        if e.indexing is Indexing.BASIC:
            evidence = reindex_basic(evidence, goal)
        return os_to_star(evidence, goal), target

    if fmt is EvidenceFormat.LMF:
        cert = LmfCert(to_lmf_node(e.proof))
    elif fmt is EvidenceFormat.LMFM:
        cert = LmfmCert(to_lmfm_node(e.proof))
    else:
        cert = StarCert(to_star_node(e.proof), goal)
    problems = correspondence_violations(cert.tree, goal)
    if problems:
        raise AdapterError(f"Índice pendente: {problems[0]}")
    return cert, target


def hooks_for(cert: LayerCert) -> FpcHooks:
    if isinstance(cert, StarCert):
        return star_hooks()
    if isinstance(cert, LmfmCert):
        return lmfm_hooks()
    return lmf_hooks()


def check_certificate(cert: LayerCert, target: PolFormula, kernel_limit: Optional[int] = None) -> ProofTrace:
    """Roda o kernel com os ganchos da camada do certificado."""
    return Kernel(hooks_for(cert), kernel_limit).check(cert, target)


def check_evidence(
    e: EvidenceFile,
    oracle_validate: bool = False,
    kernel_limit: Optional[int] = None,
    oracle_limit: Optional[int] = None,
) -> CheckReport:
    """
    Verifica um arquivo de evidência.

    Args:
        e: Evidência validada
        oracle_validate: Também consulta decide_validity
        kernel_limit: Sobrescreve MODALCERT_KERNEL_LIMIT
        oracle_limit: Sobrescreve MODALCERT_ORACLE_LIMIT

    Returns:
        CheckReport com o trace e as contagens de decide e init

    Raises:
        EvidenceRejected: a evidência não certifica a fórmula
        ResourceLimitError: limite do kernel ou do oráculo excedido
    """
    goal = evidence_goal(e)
    logger.info(f"Verificando evidência {e.format.value} para {e.formula}")
    try:
        cert, target = layer_certificate(e, goal)
        trace = check_certificate(cert, target, kernel_limit)
    except EvidenceRejected as error:
        logger.info(f"Evidência rejeitada: {error}")
        raise

    if oracle_validate:
        result = decide_validity(goal, oracle_limit)
        if isinstance(result, Countermodel):
            # Kernel e oráculo discordam
            logger.error(f"Oráculo encontrou contramodelo no mundo {result.world} para evidência certificada")
            raise EvidenceRejected("Discordância com o oráculo: a fórmula tem contramodelo")
        logger.debug("Oráculo confirma validade")

    inits = [event for event in trace if event.kind is EventKind.INIT]
    relational = sum(1 for event in inits if event.arg == str(RELIDX))
    report = CheckReport(
        format=e.format,
        trace=trace,
        decides=sum(1 for event in trace if event.kind is EventKind.DECIDE),
        inits=len(inits) - relational,
        relational_inits=relational,
    )
    logger.info(
        f"Evidência certificada: {report.decides} decides, "
        f"{report.inits} inits proposicionais, {report.relational_inits} relacionais"
    )
    return report


def translate(e: EvidenceFile, to: Layer) -> EvidenceFile:
    """
    Traduz a evidência para o certificado da camada pedida, sem verificar.

    ls, pt, ns e lmf chegam a lmf e lmfm; lmfm chega a lmf e lmfm; os e
    lmfstar chegam às três camadas.

    Raises:
        ModalInputError: não existe caminho até a camada pedida
        AdapterError: evidência inconsistente com a fórmula
    """
    goal = evidence_goal(e)
    cert, _ = layer_certificate(e, goal)
    if to is Layer.LMFSTAR:
        if not isinstance(cert, StarCert):
            raise ModalInputError(f"Sem tradução de {e.format.value} para lmfstar")
        result: LayerCert = cert
    elif to is Layer.LMFM:
        if isinstance(cert, StarCert):
            result = star_to_multifoc(cert)[0]
        elif isinstance(cert, LmfCert):
            result = lmf_to_lmfm(cert)
        else:
            result = cert
    else:
        if isinstance(cert, StarCert):
            result = erase_groups(star_to_multifoc(cert)[0])
        elif isinstance(cert, LmfmCert):
            result = erase_groups(cert)
        else:
            result = cert
    logger.info(f"Evidência {e.format.value} traduzida para {to.value}")
    return certificate_to_evidence(result, e.formula)
