"""
Boundary Rules Orchestrator

Wires the components into the five commands of the command-line tool:
train, predict, eval, bench and synth. Every command validates its
configuration before touching any data, and every artifact it writes carries
the effective configuration and its fingerprint.
"""

import os
from dataclasses import replace
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pandas as pd

from boundary_synthesis import LearnerConfig
from data_pipeline import (
    RawDataset,
    Schema,
    binarize_labels,
    infer_csv_schema,
    load_csv,
    synth_generate,
    synth_separable,
    write_csv,
)
from ensemble import EnsembleConfig
from evaluation import (
    EvalReport,
    PipelineConfig,
    TrainedModel,
    bench_scaling,
    generate_bench_chart,
    generate_cv_chart,
    run_cv,
    train_pipeline,
)
from rule_model import check_schema, load, predict_frame, save
from rule_selection import SelectionConfig
from shared.errors import ConfigError
from shared.json_utils import dump_json
from shared.observability import TraceWriter, get_logger
from shared.run_config import RunConfig

PREDICTION_COLUMNS = ('row_id', 'prediction', 'fired_rules')


def pipeline_config(cfg: RunConfig) -> PipelineConfig:
    """
    Translate a run configuration into component settings.

    Building the component configs validates the categorical choices
    (heuristic, sample order, collision policy) before any data is read.
    """
    learner = LearnerConfig(heuristic=cfg.ensemble.heuristic, sample_order=cfg.ensemble.sample_order,
                            seed=cfg.run.seed, collisions=cfg.ensemble.collisions)
    ensemble = EnsembleConfig(n_estimators=cfg.ensemble.n_estimators, n_features=cfg.ensemble.n_features,
                              seed=cfg.run.seed, learner=learner, n_jobs=cfg.run.n_jobs,
                              with_replacement=cfg.ensemble.with_replacement)
    selection = SelectionConfig(alpha=cfg.selection.alpha, top_k=cfg.selection.top_k,
                                max_rules=cfg.selection.max_rules, min_weight=cfg.selection.min_weight,
                                min_local_support=cfg.selection.min_local_support)
    return PipelineConfig(threshold=cfg.discretization.threshold, cuts=dict(cfg.discretization.cuts),
                          max_intervals=cfg.discretization.max_intervals, ensemble=ensemble, selection=selection)


def _artifact_metadata(cfg: RunConfig) -> Dict[str, Any]:
    return {'config': cfg.provenance(), 'fingerprint': cfg.fingerprint()}


def load_training_data(cfg: RunConfig) -> Tuple[RawDataset, np.ndarray]:
    """
    Read the configured labeled dataset.

    The schema comes from the configuration; when it lists no features they
    are inferred from the file header.
    """
    path = cfg.dataset.path
    if not path:
        raise ConfigError("dataset.path is required for this command", module='run_config')
    schema = cfg.schema.build() or infer_csv_schema(path, cfg.schema.label_column, cfg.schema.target_class)
    ds = load_csv(path, schema)
    return ds, binarize_labels(ds)


def run_train(cfg: RunConfig) -> Tuple[TrainedModel, str]:
    """
    Train a model on the configured dataset and save it.

    Args:
        cfg: Validated run configuration

    Returns:
        Tuple of (trained model, model file path)
    """
    logger = get_logger("orchestrator")
    pcfg = pipeline_config(cfg)
    logger.info("Starting training", extra={'command': 'train', 'fingerprint': cfg.fingerprint()})

    ds, labels = load_training_data(cfg)
    trace = TraceWriter(cfg.output.trace_path) if cfg.output.trace_path else None
    try:
        model = train_pipeline(ds, labels, pcfg, trace=trace, metadata=_artifact_metadata(cfg))
    finally:
        if trace is not None:
            trace.close()

    save(model.ruleset, cfg.output.model_path)
    logger.info(f"Training finished: {len(model.ruleset)} rules from {len(model.candidates)} candidates",
                extra={'command': 'train', 'n_rules': len(model.ruleset),
                       'n_candidates': len(model.candidates)})
    return model, cfg.output.model_path


def run_predict(model_path: str, data_path: str, output_path: str, schema: Optional[Schema] = None) -> pd.DataFrame:
    """
    Classify every record of a CSV file with a saved model.

    Args:
        model_path: Model file written by train
        data_path: CSV file with (at least) the model's feature columns
        output_path: Predictions CSV (row_id, prediction, fired_rules)
        schema: Optional data schema to check against the model

    Returns:
        The predictions table that was written
    """
    logger = get_logger("orchestrator")
    if not data_path:
        raise ConfigError("a data file is required for predict (--data or dataset.path)", module='run_config')
    rs = load(model_path)
    if schema is not None:
        check_schema(rs, schema)

    ds = load_csv(data_path, rs.schema, require_label=False, allow_empty=True)
    labels, fired = predict_frame(rs, ds)
    table = pd.DataFrame({
        'row_id': np.arange(1, ds.n + 1),
        'prediction': [rs.target_class if label else rs.negative_class for label in labels],
        'fired_rules': [';'.join(str(number) for number in numbers) for numbers in fired],
    }, columns=list(PREDICTION_COLUMNS))

    parent = os.path.dirname(os.path.abspath(output_path))
    os.makedirs(parent, exist_ok=True)
    table.to_csv(output_path, index=False, lineterminator='\n')
    logger.info(f"Wrote {ds.n} predictions to {output_path}",
                extra={'command': 'predict', 'n_positive': int(labels.sum())})
    return table


def run_eval(cfg: RunConfig) -> EvalReport:
    """Cross-validate the configured pipeline and write the report files and chart."""
    logger = get_logger("orchestrator")
    pcfg = pipeline_config(cfg)
    ds, labels = load_training_data(cfg)
    name = cfg.dataset.name or os.path.splitext(os.path.basename(cfg.dataset.path))[0]

    report = run_cv(ds, labels, pcfg, folds=cfg.run.folds, seed=cfg.run.seed, n_jobs=cfg.run.n_jobs,
                    dataset=name, config=cfg.provenance(), fingerprint=cfg.fingerprint())
    report.write(cfg.output.report_dir)
    generate_cv_chart(report, os.path.join(cfg.output.report_dir, 'cv_summary.png'))
    logger.info(f"Evaluation finished: F1 {report.mean('f1'):.3f}", extra={'command': 'eval'})
    return report


def run_bench(cfg: RunConfig) -> pd.DataFrame:
    """Run the scaling bench and write its table, sidecar and chart."""
    logger = get_logger("orchestrator")
    # synthetic features are named f1..fd, so configured cut points do not apply
    pcfg = replace(pipeline_config(cfg), cuts={})
    table = bench_scaling(cfg.bench.sizes, cfg.bench.features, cfg.bench.ratios, pcfg,
                          repeats=cfg.bench.repeats, seed=cfg.run.seed)

    os.makedirs(cfg.output.report_dir, exist_ok=True)
    table_path = os.path.join(cfg.output.report_dir, 'bench_table.csv')
    table.to_csv(table_path, index=False, float_format='%.6g', lineterminator='\n')
    dump_json(_artifact_metadata(cfg), table_path + '.json')
    generate_bench_chart(table, os.path.join(cfg.output.report_dir, 'bench.png'))
    logger.info(f"Bench finished: {len(table)} configurations written to {table_path}",
                extra={'command': 'bench'})
    return table


def run_synth(cfg: RunConfig) -> RawDataset:
    """Generate the configured synthetic dataset and write it with a JSON sidecar."""
    logger = get_logger("orchestrator")
    s = cfg.synth
    if s.separable_threshold is not None:
        ds, labels = synth_separable(s.n_records, s.n_features, threshold=s.separable_threshold, seed=cfg.run.seed)
    else:
        ds, labels = synth_generate(s.n_records, s.n_features, s.imbalance_ratio, seed=cfg.run.seed)

    parent = os.path.dirname(os.path.abspath(s.output_path))
    os.makedirs(parent, exist_ok=True)
    write_csv(ds, s.output_path)
    sidecar = _artifact_metadata(cfg)
    sidecar.update({'n_records': ds.n, 'n_positive': int(labels.sum())})
    dump_json(sidecar, s.output_path + '.json')
    logger.info(f"Wrote {ds.n} synthetic records to {s.output_path}", extra={'command': 'synth'})
    return ds
