"""
Scaling bench: generation and selection time over synthetic data sets.
"""

import itertools
import logging
from dataclasses import replace
from typing import Sequence

import numpy as np
import pandas as pd

from data_pipeline import synth_generate
from shared.config import BENCH_MAX_FEATURES, BENCH_MAX_RECORDS, DEFAULT_SEED
from shared.errors import ConfigError

from .pipeline import PipelineConfig, train_pipeline

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ('n_records', 'n_features', 'ratio', 'repeats', 't_gen', 't_gen_std', 't_sel', 't_sel_std',
                 'n_candidates', 'n_rules')


def bench_scaling(sizes: Sequence[int], features: Sequence[int], ratios: Sequence[float], cfg: PipelineConfig,
                  repeats: int = 1, seed: int = DEFAULT_SEED, max_records: int = BENCH_MAX_RECORDS,
                  max_features: int = BENCH_MAX_FEATURES) -> pd.DataFrame:
    """
    Time the pipeline on every (size, feature count, positive ratio) combination.

    Each repeat draws a fresh data set and fresh feature subsets from its own
    seed. Times are wall clock in seconds, excluding data generation.

    Returns:
        One row per combination with mean and standard deviation of the
        generation and selection times
    """
    if repeats < 1:
        raise ConfigError(f"repeats must be >= 1, got {repeats}", module='evaluation')
    if not sizes or not features or not ratios:
        raise ConfigError("bench needs at least one size, feature count and ratio", module='evaluation')
    if max(sizes) > max_records:
        raise ConfigError(f"bench size {max(sizes)} exceeds the cap of {max_records} records", module='evaluation')
    if max(features) > max_features:
        raise ConfigError(f"bench feature count {max(features)} exceeds the cap of {max_features}",
                          module='evaluation')
    if cfg.ensemble.n_features > min(features):
        raise ConfigError(f"n_features={cfg.ensemble.n_features} exceeds the smallest bench feature count "
                          f"{min(features)}", module='evaluation')

    rows = []
    for n, d, ratio in itertools.product(sizes, features, ratios):
        t_gen, t_sel, n_candidates, n_rules = [], [], [], []
        for repeat in range(repeats):
            run_seed = seed + repeat
            ds, labels = synth_generate(n, d, ratio, seed=run_seed)
            run_cfg = replace(cfg, ensemble=replace(cfg.ensemble, seed=run_seed))
            model = train_pipeline(ds, labels, run_cfg)
            t_gen.append(model.t_gen)
            t_sel.append(model.t_sel)
            n_candidates.append(len(model.candidates))
            n_rules.append(len(model.ruleset))
        rows.append({
            'n_records': n,
            'n_features': d,
            'ratio': ratio,
            'repeats': repeats,
            't_gen': float(np.mean(t_gen)),
            't_gen_std': float(np.std(t_gen)),
            't_sel': float(np.mean(t_sel)),
            't_sel_std': float(np.std(t_sel)),
            'n_candidates': float(np.mean(n_candidates)),
            'n_rules': float(np.mean(n_rules)),
        })
        logger.info(f"Bench n={n} d={d} ratio={ratio:g}: generation {rows[-1]['t_gen']:.3f}s, "
                    f"selection {rows[-1]['t_sel']:.3f}s")
    return pd.DataFrame(rows, columns=list(BENCH_COLUMNS))
