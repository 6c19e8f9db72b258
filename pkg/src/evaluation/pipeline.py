"""
End-to-end training: discretize, binarize, run the ensemble, select rules and
assemble the rule set. Used by the train command, every cross-validation fold
and the scaling bench.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Sequence

import numpy as np

from binarizer import BinarizedDataset, Discretization, binarize, fit_discretization
from boundary_synthesis import BoundarySet
from data_pipeline import RawDataset
from ensemble import EnsembleConfig, train_ensemble
from rule_model import RuleSet, build_ruleset, negative_class_of
from rule_selection import SelectionConfig, SelectionResult, select_rules
from shared.config import DEFAULT_THRESHOLD

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    """Everything that shapes a trained model."""

    threshold: float = DEFAULT_THRESHOLD
    cuts: Mapping[str, Sequence[float]] = field(default_factory=dict)
    max_intervals: Optional[int] = None
    ensemble: EnsembleConfig = field(default_factory=EnsembleConfig)
    selection: SelectionConfig = field(default_factory=SelectionConfig)


@dataclass
class TrainedModel:
    ruleset: RuleSet
    discretization: Discretization
    binarized: BinarizedDataset
    candidates: BoundarySet
    selection: SelectionResult
    t_gen: float
    t_sel: float


def selection_audit(candidates: BoundarySet, selection: SelectionResult) -> Dict[str, Any]:
    """Model-file record of how the rules were chosen."""
    return {
        'n_candidates': selection.n_candidates,
        'n_filtered': selection.n_filtered,
        'n_unselected': len(candidates) - len(selection.selected),
        'stop_reason': selection.stop_reason,
        'rules': [
            {
                'weight': round(rule.weight, 6),
                'new_positives': rule.new_positives,
                'new_negatives': rule.new_negatives,
                'sources': [source.to_dict() for source in rule.sources],
            }
            for rule in selection.selected
        ],
    }


def train_pipeline(ds: RawDataset, labels: np.ndarray, cfg: PipelineConfig, trace=None,
                   metadata: Optional[Mapping[str, Any]] = None) -> TrainedModel:
    """
    Learn a rule set from labeled records.

    Generation time covers discretization, binarization and the ensemble;
    selection time covers filtering and set cover.

    Args:
        ds: Training records
        labels: Binarized labels (1 = target class)
        cfg: Pipeline settings
        trace: Optional trace sink shared by the learners and the set cover
        metadata: Extra model-file metadata (configuration, fingerprint)

    Returns:
        TrainedModel with the rule set and every intermediate result
    """
    start = time.perf_counter()
    disc = fit_discretization(ds, labels, cfg.threshold, cuts=cfg.cuts, max_intervals=cfg.max_intervals)
    bds = binarize(ds, labels, disc)
    candidates = train_ensemble(bds, cfg.ensemble, trace=trace)
    t_gen = time.perf_counter() - start

    start = time.perf_counter()
    selection = select_rules(candidates, bds, cfg.selection, trace=trace, n_jobs=cfg.ensemble.n_jobs)
    t_sel = time.perf_counter() - start

    model_metadata = dict(metadata or {})
    model_metadata['selection'] = selection_audit(candidates, selection)
    negative = negative_class_of(ds.labels, ds.schema.target_class) if ds.labels is not None else '0'
    ruleset = build_ruleset(selection.points, ds.schema, disc, negative_class=negative, metadata=model_metadata)

    logger.info(f"Trained {len(ruleset)} rules from {ds.n} records in {t_gen + t_sel:.3f}s "
                f"(generation {t_gen:.3f}s, selection {t_sel:.3f}s)",
                extra={'n_rules': len(ruleset), 'duration_ms': round((t_gen + t_sel) * 1000, 2)})
    return TrainedModel(ruleset=ruleset, discretization=disc, binarized=bds, candidates=candidates,
                        selection=selection, t_gen=t_gen, t_sel=t_sel)
