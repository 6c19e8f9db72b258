#!/usr/bin/env python3
"""
Command-line interface for the boundary rule learner.

    run_rules.py train   -c config.yaml            learn and save a rule set
    run_rules.py predict --model m.json --data x.csv
    run_rules.py eval    -c config.yaml            k-fold cross-validation report
    run_rules.py bench   -c config.yaml            scaling timing table
    run_rules.py synth   -c config.yaml            write a synthetic dataset

Exit codes: 0 success, 1 invalid configuration, 2 data error, 3 internal error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from rule_model import render
from rules_orchestrator import run_bench, run_eval, run_predict, run_synth, run_train
from shared.errors import EXIT_INTERNAL, EXIT_OK, RulesError
from shared.observability import configure_logging
from shared.run_config import load_run_config

logger = logging.getLogger("run_rules")


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(',') if part.strip()]


def _float_list(text: str) -> List[float]:
    return [float(part) for part in text.split(',') if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Learn interpretable rule sets from tabular data with binary labels."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", type=str, help="YAML run configuration")
    common.add_argument("--seed", type=int, help="Root random seed (default: 0)")
    common.add_argument("--n-jobs", type=int, help="Parallel workers, joblib convention (default: 1)")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")

    learner = argparse.ArgumentParser(add_help=False)
    learner.add_argument("--data", type=str, help="Labeled CSV file (overrides dataset.path)")
    learner.add_argument("--threshold", type=float, help="ChiMerge threshold (default: 6)")
    learner.add_argument("--estimators", type=int, help="Number of estimators E (default: 10)")
    learner.add_argument("--features", type=int, help="Features per estimator k (default: 2)")
    learner.add_argument("--heuristic", choices=["H1", "H2"], help="Bit selection heuristic (default: H1)")
    learner.add_argument("--collisions", choices=["skip", "cover"],
                         help="Positives below a negative: skip or cover (default: skip)")
    learner.add_argument("--with-replacement", action="store_const", const=True,
                         help="Sample each estimator's features with replacement")
    learner.add_argument("--alpha", type=float, help="Positive/negative trade-off in [0, 1] (default: 0.7)")
    learner.add_argument("--top-k", type=int, help="Candidates kept before set cover (default: 500)")
    learner.add_argument("--max-rules", type=int, help="Stop after this many rules")

    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", parents=[common, learner], help="Train and save a model")
    train.add_argument("--model", type=str, help="Model output path (overrides output.model_path)")
    train.add_argument("--trace", type=str, help="Write the learner and selection trace to this file")

    predict = commands.add_parser("predict", parents=[common], help="Apply a saved model to a CSV file")
    predict.add_argument("--model", type=str, help="Model file (overrides output.model_path)")
    predict.add_argument("--data", type=str,
                         help="Records to classify (overrides dataset.path); an empty file gives an empty output")
    predict.add_argument("--output", type=str, help="Predictions CSV (overrides output.predictions_path)")

    evaluate = commands.add_parser("eval", parents=[common, learner], help="Cross-validate the pipeline")
    evaluate.add_argument("--folds", type=int, help="Number of stratified folds (default: 5)")
    evaluate.add_argument("--report-dir", type=str, help="Report directory (overrides output.report_dir)")

    bench = commands.add_parser("bench", parents=[common, learner], help="Time the pipeline on synthetic data")
    bench.add_argument("--sizes", type=_int_list, help="Comma-separated record counts")
    bench.add_argument("--bench-features", type=_int_list, help="Comma-separated feature counts")
    bench.add_argument("--ratios", type=_float_list, help="Comma-separated positive ratios")
    bench.add_argument("--repeats", type=int, help="Runs per configuration")
    bench.add_argument("--report-dir", type=str, help="Output directory (overrides output.report_dir)")

    synth = commands.add_parser("synth", parents=[common], help="Generate a synthetic dataset")
    synth.add_argument("--n-records", type=int, help="Number of rows")
    synth.add_argument("--n-features", type=int, help="Number of features f1..fd")
    synth.add_argument("--ratio", type=float, help="Expected positive fraction in (0, 0.5]")
    synth.add_argument("--separable", type=float, help="Label rows by f1 > this value instead")
    synth.add_argument("--output", type=str, help="CSV output path (overrides synth.output_path)")
    return parser


def overrides_from_args(args: argparse.Namespace) -> dict:
    """Map command-line flags to dotted configuration keys; unset flags are None."""
    get = vars(args).get
    overrides = {
        'run.seed': get('seed'),
        'run.n_jobs': get('n_jobs'),
        'discretization.threshold': get('threshold'),
        'ensemble.n_estimators': get('estimators'),
        'ensemble.n_features': get('features'),
        'ensemble.heuristic': get('heuristic'),
        'ensemble.collisions': get('collisions'),
        'ensemble.with_replacement': get('with_replacement'),
        'selection.alpha': get('alpha'),
        'selection.top_k': get('top_k'),
        'selection.max_rules': get('max_rules'),
        'run.folds': get('folds'),
        'output.report_dir': get('report_dir'),
        'bench.sizes': get('sizes'),
        'bench.features': get('bench_features'),
        'bench.ratios': get('ratios'),
        'bench.repeats': get('repeats'),
        'synth.n_records': get('n_records'),
        'synth.n_features': get('n_features'),
        'synth.imbalance_ratio': get('ratio'),
        'synth.separable_threshold': get('separable'),
    }
    if args.command == 'predict':
        overrides['output.predictions_path'] = get('output')
    elif args.command == 'synth':
        overrides['synth.output_path'] = get('output')
    overrides['dataset.path'] = get('data')
    overrides['output.model_path'] = get('model')
    overrides['output.trace_path'] = get('trace')
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    """Parse command line arguments and run one command; returns the exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(verbose=args.verbose)
    logger.debug(f"Running command {args.command}")

    try:
        cfg = load_run_config(args.config, overrides_from_args(args))

        if args.command == 'train':
            model, _ = run_train(cfg)
            sys.stdout.write(render(model.ruleset))
        elif args.command == 'predict':
            run_predict(cfg.output.model_path, cfg.dataset.path, cfg.output.predictions_path,
                        schema=cfg.schema.build())
        elif args.command == 'eval':
            sys.stdout.write(run_eval(cfg).to_text())
        elif args.command == 'bench':
            sys.stdout.write(run_bench(cfg).to_string(index=False) + '\n')
        elif args.command == 'synth':
            run_synth(cfg)
        return EXIT_OK

    except RulesError as e:
        logger.error(f"Command {args.command} failed: {e.qualified()}", extra={'error': type(e).__name__})
        sys.stderr.write(e.qualified() + '\n')
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error running {args.command}: {e}", exc_info=True)
        sys.stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
