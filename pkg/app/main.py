#!/usr/bin/env python3
"""
fansheaf
========
Exact fan invariants, computed combinatorially and through pure sheaves.

Subcommands:
- invariants: h, g, h*, local h*, flag f, ab, cd and local cd of one fan
- mixed: mixed and local invariants of a subdivision
- sheaf: build a pure sheaf and dump its stalks and decomposition
- verify: run the verification suites on a subdivision or the default corpus
- refine: write a simplicial refinement of a fan

Run:
    python -m app.main invariants --fan square_cone.json --which h,g,hstar,cd
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from dotenv import load_dotenv
from rich.console import Console

sys.path.insert(0, str(Path(__file__).parent.parent))

from app.components.report_view import render_cross_check, render_report, render_sheaf_summary, render_values
from app.core.cdindex import ab_index, cd_index, flag_f, local_cd_index, mixed_cd
from app.core.config_manager import get_config
from app.core.corpus import default_corpus
from app.core.data_loader import FanLoader, LoadedFan, dumps, to_text, write_json
from app.core.degree_map import DegreeMap, gorenstein_degree_map
from app.core.ehrhart import build_ehrhart_sheaf
from app.core.errors import FanSheafError, ParseError, SelectorError, TargetNotSingleCone
from app.core.hodge import hodge_deligne
from app.core.invariants import (
    hstar,
    limit_mixed_hstar,
    local_h,
    local_hstar,
    local_limit_mixed_hstar,
    mixed_h,
    mixed_hstar,
    refined_limit_mixed_hstar,
    toric_g,
    toric_h,
)
from app.core.logging_utils import configure_logging, get_logger
from app.core.ncpoly import eta
from app.core.poset import cone_view
from app.core.sheaf import decompose, global_sections, simple_sheaf, t_poincare
from app.core.subdivision import simplicial_refinement
from app.core.verify import SUITE_CHOICES, run_verification, single_report, validate_suite

logger = get_logger('cli')

EXIT_OK, EXIT_CHECK_FAILED, EXIT_ERROR = 0, 1, 2


# =============================================================================
# INVARIANT REGISTRIES
# =============================================================================

def _single_cone_g(loaded: LoadedFan):
    fan = loaded.fan
    if len(fan.maximal) != 1:
        raise TargetNotSingleCone(len(fan.maximal))
    return toric_g(cone_view(fan, fan.maximal[0]))


def _degree_map(loaded: LoadedFan) -> DegreeMap:
    return loaded.degree_map or gorenstein_degree_map(loaded.fan)


FAN_INVARIANTS: Dict[str, Callable[[LoadedFan], object]] = {
    'h': lambda f: toric_h(f.fan),
    'g': _single_cone_g,
    'hstar': lambda f: hstar(f.fan, _degree_map(f)),
    'local-hstar': lambda f: local_hstar(f.fan, _degree_map(f)),
    'mixed-hstar': lambda f: mixed_hstar(f.fan, _degree_map(f)),
    'flag-f': lambda f: flag_f(f.fan),
    'ab': lambda f: ab_index(f.fan),
    'cd': lambda f: cd_index(f.fan),
    'local-cd': lambda f: local_cd_index(f.fan),
}

# sheaf-side counterpart and how to read the combinatorial value for comparison
CROSS_CHECKS: Dict[str, Callable[[LoadedFan], object]] = {
    'h': lambda f: global_sections(simple_sheaf(f.fan, f.fan.zero, 'A')).poincare(),
    'hstar': lambda f: global_sections(build_ehrhart_sheaf(f.fan, _degree_map(f))).poincare(),
    'cd': lambda f: t_poincare(simple_sheaf(f.fan, f.fan.zero, 'C')),
    'mixed-hstar': lambda f: hodge_deligne(build_ehrhart_sheaf(f.fan, _degree_map(f))),
}
CROSS_CHECK_READERS: Dict[str, Callable[[object], object]] = {
    'cd': eta,
}

SUBDIVISION_INVARIANTS = {
    'mixed-h': lambda s, G: mixed_h(s),
    'local-h': lambda s, G: local_h(s),
    'mixed-cd': lambda s, G: mixed_cd(s),
    'limit-mixed-hstar': lambda s, G: limit_mixed_hstar(s, G),
    'local-limit-mixed-hstar': lambda s, G: local_limit_mixed_hstar(s, G),
    'refined-limit-mixed-hstar': lambda s, G: refined_limit_mixed_hstar(s, G),
}

STRUCTURES = ('A', 'C', 'ehrhart')


def parse_selectors(raw: str, known: Sequence[str]) -> List[str]:
    """Comma list validated against the registry; duplicates dropped, order kept."""
    selected = [s.strip() for s in raw.split(',') if s.strip()]
    unknown = {s for s in selected if s not in known}
    if unknown or not selected:
        raise SelectorError(unknown or {raw}, set(known))
    return list(dict.fromkeys(selected))


def _key(selector: str) -> str:
    return selector.replace('-', '_')


# =============================================================================
# SUBCOMMANDS
# =============================================================================

def run_invariants(args) -> dict:
    which = parse_selectors(args.which, list(FAN_INVARIANTS))
    loaded = FanLoader().load_fan(args.fan)
    values = {_key(s): FAN_INVARIANTS[s](loaded) for s in which}
    document = {'fan': loaded.fan.label, 'invariants': values}
    if args.cross_check:
        rows = {}
        for s in which:
            if s not in CROSS_CHECKS:
                continue
            sheaf_value = CROSS_CHECKS[s](loaded)
            combinatorial = CROSS_CHECK_READERS.get(s, lambda v: v)(values[_key(s)])
            rows[_key(s)] = {'combinatorial': str(combinatorial), 'sheaf': str(sheaf_value),
                             'agrees': combinatorial == sheaf_value}
        document['cross_check'] = rows
    return document


def run_mixed(args) -> dict:
    which = parse_selectors(args.which, list(SUBDIVISION_INVARIANTS))
    loaded = FanLoader().load_subdivision(args.coarse, args.fine)
    pi = loaded.subdivision
    needs_degree_map = any('hstar' in s for s in which)
    G = (loaded.degree_map or gorenstein_degree_map(pi.coarse)) if needs_degree_map else None
    values = {_key(s): SUBDIVISION_INVARIANTS[s](pi, G) for s in which}
    return {'coarse': pi.coarse.label, 'fine': pi.fine.label, 'invariants': values}


def _build_sheaf(loaded: LoadedFan, structure: str):
    fan = loaded.fan
    if structure == 'ehrhart':
        return build_ehrhart_sheaf(fan, _degree_map(loaded))
    return simple_sheaf(fan, fan.zero, structure)


def run_sheaf(args) -> dict:
    loaded = FanLoader().load_fan(args.fan)
    sheaf = _build_sheaf(loaded, args.structure)
    decomposition = decompose(sheaf)
    summary = {
        'fan': loaded.fan.label,
        'structure': args.structure,
        'poincare': global_sections(sheaf).poincare(),
        'hodge_deligne': hodge_deligne(sheaf),
        'flabby': sheaf.is_flabby(),
        'summands': len(decomposition.summands),
    }
    if args.dump:
        path = write_json(args.dump, {
            'sheaf': sheaf.to_dict(),
            'decomposition': decomposition.to_dict(),
            'local_poincare': {str(c): p for c, p in sorted(decomposition.local_poincare.items()) if p},
        })
        summary['dump'] = str(path)
    return summary


def run_verify(args) -> dict:
    validate_suite(args.suite)
    if args.coarse or args.fine:
        if not (args.coarse and args.fine):
            raise ParseError("verify needs both --coarse and --fine")
        loaded = FanLoader().load_subdivision(args.coarse, args.fine)
        report = single_report(loaded.subdivision, args.suite, loaded.degree_map)
    else:
        if args.corpus != 'default':
            raise SelectorError({args.corpus}, {'default'})
        report = run_verification(default_corpus(seed=args.seed), args.suite, workers=args.workers)
    return report.to_dict()


def run_refine(args) -> dict:
    loaded = FanLoader().load_fan(args.fan)
    pi = simplicial_refinement(loaded.fan)
    document = pi.to_dict()
    write_json(args.out, document)
    return {'fan': loaded.fan.label, 'out': str(args.out), 'maximal_cones': len(pi.fine.maximal),
            'already_simplicial': pi.is_identity()}


# =============================================================================
# ARGUMENTS
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    config = get_config()
    parser = argparse.ArgumentParser(prog='fansheaf', description='Exact invariants of fans and fan subdivisions')
    parser.add_argument('--format', choices=('json', 'text'), default=config.get('output', 'format', default='text'))
    parser.add_argument('-v', '--verbose', action='count', default=0)
    commands = parser.add_subparsers(dest='command', required=True)

    invariants = commands.add_parser('invariants', help='invariants of one fan')
    invariants.add_argument('--fan', required=True)
    invariants.add_argument('--which', required=True, help=f"comma list of {','.join(FAN_INVARIANTS)}")
    invariants.add_argument('--cross-check', action='store_true', help='also compute the sheaf-side values')

    mixed = commands.add_parser('mixed', help='mixed invariants of a subdivision')
    mixed.add_argument('--coarse', required=True)
    mixed.add_argument('--fine', required=True)
    mixed.add_argument('--which', required=True, help=f"comma list of {','.join(SUBDIVISION_INVARIANTS)}")

    sheaf = commands.add_parser('sheaf', help='build a pure sheaf')
    sheaf.add_argument('--fan', required=True)
    sheaf.add_argument('--structure', choices=STRUCTURES, default='A')
    sheaf.add_argument('--dump')

    verify = commands.add_parser('verify', help='run the verification suites')
    verify.add_argument('--coarse')
    verify.add_argument('--fine')
    verify.add_argument('--corpus', default='default')
    verify.add_argument('--suite', choices=SUITE_CHOICES, default='all')
    verify.add_argument('--seed', type=int)
    verify.add_argument('--workers', type=int, default=1)
    verify.add_argument('--show-passing', action='store_true')

    refine = commands.add_parser('refine', help='simplicial refinement without new rays')
    refine.add_argument('--fan', required=True)
    refine.add_argument('--out', required=True)
    return parser


COMMANDS = {
    'invariants': run_invariants,
    'mixed': run_mixed,
    'sheaf': run_sheaf,
    'verify': run_verify,
    'refine': run_refine,
}

LEVELS = {0: None, 1: 'INFO', 2: 'DEBUG'}


def _emit(console: Console, args, document: dict):
    if args.format == 'json':
        sys.stdout.write(dumps(to_text(document) if args.command != 'verify' else document))
        return
    if args.command in ('invariants', 'mixed'):
        render_values(console, args.command, to_text(document['invariants']))
        render_cross_check(console, document.get('cross_check', {}))
    elif args.command == 'sheaf':
        render_sheaf_summary(console, to_text(document))
    elif args.command == 'verify':
        render_report(console, document, show_passing=args.show_passing)
    else:
        render_values(console, args.command, {k: str(v) for k, v in document.items()})


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    level = LEVELS.get(min(args.verbose, 2)) or get_config().get('logging', 'level', default='WARNING')
    configure_logging(level)
    console = Console()
    error_console = Console(stderr=True)

    try:
        document = COMMANDS[args.command](args)
    except FanSheafError as e:
        error_console.print(f"[bold red]error[/bold red] {e.code}: {e.message}", highlight=False)
        return EXIT_ERROR

    _emit(console, args, document)
    if args.command == 'verify' and document['summary']['fail']:
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == '__main__':
    raise SystemExit(main())
