"""Linha de comando do certificador de provas da lógica modal K."""
import argparse
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from check_service import Layer, check_evidence, translate
from config import Settings, get_settings
from evidence_processor import certificate_to_evidence, load_evidence, serialize_evidence
from exceptions import EvidenceRejected, ModalInputError, ResourceLimitError
from formula_parser import format_formula, parse_formula
from kernel import format_trace
from oracle_search import NotFound, SearchBudget, search_lmf
from utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


def _check(args: argparse.Namespace, settings: Settings) -> int:
    evidence = load_evidence(args.file)
    report = check_evidence(
        evidence,
        oracle_validate=args.oracle_validate,
        kernel_limit=settings.kernel_limit,
        oracle_limit=settings.oracle_limit,
    )
    if args.trace:
        sys.stdout.write(format_trace(report.trace))
    return EXIT_OK


def _translate(args: argparse.Namespace, settings: Settings) -> int:
    evidence = load_evidence(args.file)
    sys.stdout.write(serialize_evidence(translate(evidence, Layer(args.to))))
    return EXIT_OK


def _search(args: argparse.Namespace, settings: Settings) -> int:
    goal = parse_formula(args.formula)
    budget = (
        SearchBudget.parse(args.budget)
        if args.budget
        else SearchBudget(settings.search_max_decides, settings.search_max_nodes)
    )
    result = search_lmf(goal, budget, kernel_limit=settings.kernel_limit)
    if isinstance(result, NotFound):
        logger.info(f"Nenhuma prova encontrada: {result.reason}")
        return EXIT_REJECTED
    sys.stdout.write(serialize_evidence(certificate_to_evidence(result, format_formula(goal))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modalcert",
        description="Verifica evidências de prova da lógica modal K com um kernel focado.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Logs de depuração em stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Verifica um arquivo de evidência")
    check.add_argument("file")
    check.add_argument("--trace", action="store_true", help="Imprime o trace em stdout")
    check.add_argument("--oracle-validate", action="store_true", help="Confere o resultado com o oráculo semântico")
    check.set_defaults(handler=_check)

    trace = commands.add_parser("trace", help="Verifica e imprime o trace")
    trace.add_argument("file")
    trace.add_argument("--oracle-validate", action="store_true")
    trace.set_defaults(handler=_check, trace=True)

    translate_cmd = commands.add_parser("translate", help="Emite o certificado de camada como JSON")
    translate_cmd.add_argument("file")
    translate_cmd.add_argument("--to", required=True, choices=[layer.value for layer in Layer])
    translate_cmd.set_defaults(handler=_translate)

    search = commands.add_parser("search", help="Busca uma prova LMF para a fórmula")
    search.add_argument("formula")
    search.add_argument("--budget", help="D,N: decisões por ramo e tentativas de decisão no total")
    search.set_defaults(handler=_search)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Executa a CLI e devolve o código de saída.

    Returns:
        0 certificado, 1 rejeitado ou sem prova, 2 entrada inválida,
        3 limite de recursos ou erro interno
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT

    try:
        settings = get_settings()
    except ValidationError as e:
        setup_logging(debug=args.verbose)
        logger.error(f"Configuração inválida: {e}")
        return EXIT_INPUT

    setup_logging(debug=settings.debug or args.verbose, json_output=settings.log_json)
    try:
        return args.handler(args, settings)
    except ResourceLimitError as e:
        logger.error(f"Limite excedido: {e}")
        return EXIT_LIMIT
    except EvidenceRejected as e:
        logger.error(f"Rejeitado: {e}")
        return EXIT_REJECTED
    except ModalInputError as e:
        logger.error(f"Entrada inválida: {e}")
        return EXIT_INPUT
    except Exception as e:
        logger.exception(f"Erro interno: {e}")
        return EXIT_LIMIT


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
