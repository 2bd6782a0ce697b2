#!/usr/bin/env python3
"""
Interface en ligne de commande: analyze, construct, walsh, verify-paper

Codes de sortie: 0 succès, 1 écart entre prédiction et certification,
2 erreur d'entrée ou d'utilisation. Le JSON est écrit sur stdout, les logs
sur stderr.
"""
import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

# Ajouter le répertoire parent au path
sys.path.append(str(Path(__file__).parent.parent))

from config.config import Config
from src.boolfun import (
    BooleanFunction, WalshMode, cf_minimality_check, cf_so_check, cf_so_singly_even_check,
    is_bent, predicted_cf_report, walsh_spectrum
)
from src.code_analysis import analyze, new_code
from src.error_handler import SoqError, ValidationError
from src.logger import get_logger, soq_logger
from src.monitoring import get_metrics_collector
from src.so_constructions import build_construction
from src.utils import (
    dumps_json, export_verification_to_csv, format_duration, format_enumerator, parse_enumerator,
    read_matrix_file, read_truth_table_file, write_matrix_file
)

logger = get_logger('cli')

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

# Options de la CLI -> clés des paramètres de construction
_PARAM_KEYS = {'m': 'm', 'nprime': 'n_prime', 'nsecond': 'n_second', 's': 's', 'k': 'k'}

_CHECKED_FIELDS = ('n', 'k', 'd', 'self_orthogonal', 'parity_class', 'minimal', 'violates_ab')


def _emit(payload: Any) -> None:
    sys.stdout.write(dumps_json(payload) + '\n')


def cmd_analyze(args) -> int:
    code = new_code(read_matrix_file(args.matrix_file))
    report = analyze(code)
    _emit(report.to_dict())
    return EXIT_OK


def _construction_params(args) -> Dict[str, int]:
    expected = Config.CONSTRUCTIONS[args.name]['params']
    params = {}
    for option in expected:
        value = getattr(args, option)
        if value is None:
            raise ValidationError(f"{args.name} requires --{option}")
        params[_PARAM_KEYS[option]] = value
    extra = [option for option in _PARAM_KEYS if option not in expected and getattr(args, option) is not None]
    if extra:
        raise ValidationError(f"{args.name} does not take {', '.join('--' + o for o in extra)}")
    return params


def cmd_construct(args) -> int:
    params = _construction_params(args)
    result = build_construction(args.name, params)

    stem = '_'.join([args.name] + [f"{key}{value}" for key, value in params.items()])
    output_dir = Path(args.output_dir or Config.OUTPUT_DIR)
    comment = (f"{Config.CONSTRUCTIONS[args.name]['name']} {params}\n"
               f"[{result.code.n},{result.code.k},{result.certified.d}] "
               f"{result.certified.weight_enumerator}")
    write_matrix_file(output_dir / f"{stem}.txt", result.code.generator, comment)

    payload = result.to_dict()
    (output_dir / f"{stem}.json").write_text(dumps_json(payload) + '\n', encoding='utf-8')
    _emit(payload)
    return EXIT_OK if result.match else EXIT_MISMATCH


def cmd_walsh(args) -> int:
    f = BooleanFunction.from_table(read_truth_table_file(args.truth_table))
    W = walsh_spectrum(f, WalshMode.NAIVE if args.naive else WalshMode.FAST)

    payload = {
        'm': f.m,
        'weight': f.weight(),
        'spectrum': [[value, count] for value, count in W.value_counts()],
        'bent': is_bent(f) if f.m % 2 == 0 else None,
        'parseval': True,
        'affine_free': W.is_affine_free(),
        'cf_self_orthogonal': cf_so_check(W),
        'cf_singly_even': cf_so_singly_even_check(W),
        'cf_minimal': cf_minimality_check(W),
        'cf_predicted': None,
    }
    if f(0) == 0 and W.is_affine_free():
        payload['cf_predicted'] = predicted_cf_report(W).to_dict()
    _emit(payload)
    return EXIT_OK


def load_golden_cases(path: Path) -> List[Dict[str, Any]]:
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"Cannot read golden file {path}: {e}")
    cases = data.get('cases') if isinstance(data, dict) else None
    if not cases:
        raise ValidationError(f"Golden file {path} has no cases")
    return cases


def verify_case(case: Dict[str, Any]) -> Dict[str, Any]:
    """Rejoue une construction publiée et compare énumérateur et drapeaux"""
    result = build_construction(case['construction'], case['params'])
    certified = result.certified.to_dict()
    differences = []

    try:
        expected_terms = parse_enumerator(case['enumerator'])
    except ValidationError as e:
        expected_terms = None
        differences.append(f"enumerator: {e}")
    certified_terms = result.certified.weight_distribution.terms()
    if expected_terms is not None and expected_terms != certified_terms:
        differences.append(
            f"enumerator: expected {format_enumerator(expected_terms)}, "
            f"got {format_enumerator(certified_terms)}"
        )

    for name in _CHECKED_FIELDS:
        expected = case.get(name)
        if expected is not None and certified[name] != expected:
            differences.append(f"{name}: expected {expected}, got {certified[name]}")
    if not result.match:
        differences.append(f"predicted/certified: {', '.join(result.mismatches)}")

    passed = not differences
    soq_logger.log_verification_case(case['case'], passed, '; '.join(differences) or None)
    return {
        'case': case['case'],
        'construction': case['construction'],
        'params': case['params'],
        'expected': case['enumerator'],
        'certified': result.certified.weight_enumerator,
        'code': f"[{certified['n']},{certified['k']},{certified['d']}]",
        'passed': passed,
        'differences': differences,
    }


def cmd_verify_paper(args) -> int:
    golden = Path(args.golden) if args.golden else Path(Config.GOLDEN_DIR) / 'paper_examples.json'
    start_time = time.perf_counter()
    rows = [verify_case(case) for case in load_golden_cases(golden)]
    elapsed = time.perf_counter() - start_time
    passed = sum(row['passed'] for row in rows)

    if args.json:
        _emit({'cases': rows, 'passed': passed, 'total': len(rows)})
    else:
        for row in rows:
            status = "✅ PASS" if row['passed'] else "❌ FAIL"
            print(f"{status} {row['case']:<22} {row['code']:<14} {row['certified']}")
            for difference in row['differences']:
                print(f"   ⚠️ {difference}")
        print(f"\n📊 {passed}/{len(rows)} cas vérifiés en {format_duration(elapsed)}")

    if args.csv:
        export_verification_to_csv([
            {**{k: v for k, v in row.items() if k != 'differences'},
             'params': json.dumps(row['params']),
             'differences': '; '.join(row['differences'])}
            for row in rows
        ], args.csv)

    metrics = get_metrics_collector()
    soq_logger.log_performance_metrics('verify-paper', {
        'codewords': metrics.total('codewords_enumerated'),
        'codewords_per_second': metrics.snapshot()['codewords_per_second'],
    })
    return EXIT_OK if passed == len(rows) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='soq', description='Codes binaires auto-orthogonaux simplement pairs: construction et certification'
    )
    parser.add_argument('--threads', type=int, default=None,
                        help="Nombre de workers d'énumération (défaut: ENUMERATION_WORKERS)")
    parser.add_argument('--field-poly', action='append', default=[], metavar='HEX',
                        help='Polynôme primitif pour GF(2^m), degré déduit (répétable)')
    parser.add_argument('--verbose', action='store_true', help='Logs détaillés sur stderr')

    subparsers = parser.add_subparsers(dest='command', required=True)

    analyze_parser = subparsers.add_parser('analyze', help="Certifier le code d'une matrice génératrice")
    analyze_parser.add_argument('matrix_file', help='Fichier matrice (une ligne de 0/1 par rangée)')
    analyze_parser.set_defaults(handler=cmd_analyze)

    construct_parser = subparsers.add_parser('construct', help='Construire et certifier un code')
    construct_parser.add_argument('name', choices=sorted(Config.CONSTRUCTIONS))
    construct_parser.add_argument('--m', type=int)
    construct_parser.add_argument('--nprime', type=int)
    construct_parser.add_argument('--nsecond', type=int)
    construct_parser.add_argument('--s', type=int)
    construct_parser.add_argument('--k', type=int)
    construct_parser.add_argument('--output-dir', default=None,
                                  help='Répertoire des fichiers produits (défaut: OUTPUT_DIR)')
    construct_parser.set_defaults(handler=cmd_construct)

    walsh_parser = subparsers.add_parser('walsh', help="Spectre de Walsh et critères pour C_f")
    walsh_parser.add_argument('truth_table', help='Fichier table de vérité (2^m caractères)')
    walsh_parser.add_argument('--naive', action='store_true', help='Transformée directe (oracle)')
    walsh_parser.set_defaults(handler=cmd_walsh)

    verify_parser = subparsers.add_parser('verify-paper', help='Rejouer les exemples publiés')
    verify_parser.add_argument('--golden', default=None, help='Fichier des cas de référence')
    verify_parser.add_argument('--json', action='store_true', help='Résultats au format JSON')
    verify_parser.add_argument('--csv', default=None, help='Exporter le tableau récapitulatif en CSV')
    verify_parser.set_defaults(handler=cmd_verify_paper)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    soq_logger.set_console_level(logging.DEBUG if args.verbose else logging.WARNING)

    try:
        if args.threads is not None:
            if args.threads < 1:
                raise ValidationError(f"--threads must be at least 1, got: {args.threads}")
            Config.ENUMERATION_WORKERS = args.threads
        for text in args.field_poly:
            try:
                degree = Config.set_field_poly(int(text, 16))
            except ValueError as e:
                raise ValidationError(f"Invalid --field-poly {text!r}: {e}")
            logger.info(f"Using field polynomial {text} for GF(2^{degree})")
        Config.validate_config()
        return args.handler(args)
    except (SoqError, ValueError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
