"""Interface de linha de comando do reebkit.

Codigos de saida: 0 sucesso, 1 falha de validacao ou verificacao, 2 erro de
entrada (arquivo ilegivel, formato invalido, campo incompativel).
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from topology.common import FieldMismatch, FormatError, InvalidOption, TopologyError
from topology.config import LOG_LEVELS, RealizeOptions, SweepOptions
from topology.decorated import DecoratedGraph, validate_decoration
from topology.formats import read_field, read_off, write_field, write_off
from topology.graphs import betti1, graph_isomorphic
from topology.mesh import (
    SimplicialSurface,
    connected_components,
    signature,
    submesh,
    validate_surface,
)
from topology.realize import RealizationOutput, realize, realize_on_surface, verify_realization
from topology.reeb import compute_reeb_graph, sampled_reeb_oracle
from topology.script import PipelineScript

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2


def _emit(payload: Dict[str, Any]) -> None:
    print(json.dumps(payload, indent=2))


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _component_signatures(mesh: SimplicialSurface) -> List[Dict[str, Any]]:
    signatures = []
    for component in connected_components(mesh):
        piece, _ = submesh(mesh, component)
        signatures.append(signature(piece).to_dict())
    return signatures


def cmd_info(args: argparse.Namespace, ctx: PipelineScript) -> int:
    """Valida a malha e imprime sua assinatura."""
    mesh = read_off(args.mesh)
    report = validate_surface(mesh)
    payload = report.to_dict()
    components = _component_signatures(mesh) if report.ok else []
    payload["components"] = components
    payload["signature"] = components[0] if len(components) == 1 else None
    _emit(payload)
    if not report.ok:
        ctx.status(f"Malha invalida: {report.violations[0]}", ok=False)
        return EXIT_FAILURE
    ctx.status(f"Malha valida com {len(components)} componente(s)")
    return EXIT_OK


def cmd_compute(args: argparse.Namespace, ctx: PipelineScript) -> int:
    """Calcula o grafo de Reeb e, opcionalmente, confere com o oraculo amostrado."""
    mesh = read_off(args.mesh)
    field_ = read_field(args.field, mesh.vertex_count)
    with ctx.stage("compute", triangles=len(mesh.triangles)):
        graph = compute_reeb_graph(mesh, field_)
    _write_text(args.out, graph.to_json())
    if args.dot:
        _write_text(args.dot, graph.to_dot())

    oracle_ok: Optional[bool] = None
    if args.oracle is not None:
        sweep = SweepOptions(extra_samples=args.oracle)
        with ctx.stage("oracle", extra_samples=sweep.extra_samples):
            oracle = sampled_reeb_oracle(mesh, field_, sweep.extra_samples)
        oracle_ok = graph_isomorphic(graph, oracle, respect_levels=True).isomorphic

    _emit(
        {
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
            "betti1": betti1(graph),
            "oracle": oracle_ok,
        }
    )
    if oracle_ok is False:
        ctx.status("Oraculo amostrado discorda do grafo calculado", ok=False)
        return EXIT_FAILURE
    ctx.status(f"Grafo de Reeb gravado em {args.out}")
    return EXIT_OK


def _realize_from_args(args: argparse.Namespace, graph: DecoratedGraph) -> RealizationOutput:
    options = RealizeOptions(p=args.p, rings=args.rings)
    if args.genus is not None:
        return realize_on_surface(
            graph.skeleton(), args.genus, options.p, options.rings, orientable=args.orientable
        )
    return realize(graph, options)


def cmd_realize(args: argparse.Namespace, ctx: PipelineScript) -> int:
    """Sintetiza malha, campo e correspondencia para um grafo decorado."""
    graph = DecoratedGraph.load(args.graph)
    out = _realize_from_args(args, graph)
    write_off(out.mesh, args.out_mesh)
    write_field(out.field, args.out_field)
    map_path = args.out_map or f"{args.out_mesh}.map.json"
    _write_text(map_path, out.correspondence_json())
    components = _component_signatures(out.mesh)
    _emit(
        {
            "vertices": out.mesh.vertex_count,
            "triangles": len(out.mesh.triangles),
            "components": components,
            "signature": components[0] if len(components) == 1 else None,
            "levels": sorted(set(out.heights.values())),
        }
    )
    ctx.status(f"Realizacao gravada em {args.out_mesh}, {args.out_field} e {map_path}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, ctx: PipelineScript) -> int:
    """Realiza o grafo, recalcula o grafo de Reeb e confere as tres clausulas."""
    graph = DecoratedGraph.load(args.graph)
    decoration = validate_decoration(graph)
    if not decoration.ok:
        _emit(decoration.to_dict())
        ctx.status(f"Decoracao invalida: {decoration.violations[0]}", ok=False)
        return EXIT_FAILURE
    sweep = SweepOptions(extra_samples=args.oracle)
    out = realize(graph, RealizeOptions(p=args.p, rings=args.rings))
    report = verify_realization(graph, out, sweep.extra_samples)
    _emit(report.to_dict())
    if not report.ok:
        ctx.status("Verificacao falhou: " + "; ".join(report.failures), ok=False)
        return EXIT_FAILURE
    ctx.status("Todas as clausulas conferem")
    return EXIT_OK


def _add_realize_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", required=True, help="Grafo decorado em JSON")
    parser.add_argument("--p", type=int, default=6, help="Vertices por ciclo de bordo")
    parser.add_argument("--rings", type=int, default=2, help="Aneis por tubo")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reebkit")
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVELS,
        type=str.upper,
        default=None,
        help="Nivel de log em stderr (padrao: LOG_LEVEL ou WARNING)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    info_p = sub.add_parser("info", help="Valida uma malha OFF e imprime sua assinatura")
    info_p.add_argument("--mesh", required=True)
    info_p.set_defaults(func=cmd_info)

    compute_p = sub.add_parser("compute", help="Calcula o grafo de Reeb de um campo")
    compute_p.add_argument("--mesh", required=True)
    compute_p.add_argument("--field", required=True)
    compute_p.add_argument("--out", required=True, help="Destino do JSON do grafo")
    compute_p.add_argument("--dot", help="Destino opcional em DOT")
    compute_p.add_argument("--oracle", type=int, help="Confere com K amostras por intervalo")
    compute_p.set_defaults(func=cmd_compute)

    realize_p = sub.add_parser("realize", help="Realiza um grafo decorado")
    _add_realize_options(realize_p)
    realize_p.add_argument("--out-mesh", required=True)
    realize_p.add_argument("--out-field", required=True)
    realize_p.add_argument("--out-map", help="Correspondencia (padrao: <out-mesh>.map.json)")
    realize_p.add_argument("--genus", type=int, help="Realiza numa superficie deste genero")
    realize_p.add_argument(
        "--orientable",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="Superficie alvo orientavel (com --genus)",
    )
    realize_p.set_defaults(func=cmd_realize)

    verify_p = sub.add_parser("verify", help="Realiza e verifica um grafo decorado")
    _add_realize_options(verify_p)
    verify_p.add_argument("--oracle", type=int, default=2, help="Amostras por intervalo")
    verify_p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    with PipelineScript(args.command, log_level=args.log_level) as ctx:
        try:
            return int(args.func(args, ctx))
        except (FormatError, FieldMismatch, InvalidOption, OSError, ValidationError) as exc:
            ctx.log(f"Erro de entrada: {exc}", level="ERROR")
            ctx.status(f"Erro de entrada: {exc}", ok=False)
            return EXIT_INPUT
        except TopologyError as exc:
            ctx.log(f"Falha: {exc}", level="ERROR", extra={"error": exc.to_dict()})
            ctx.status(f"{type(exc).__name__}: {exc}", ok=False)
            return EXIT_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
