"""Neural-assembly simulation of directional causal binding.

The package stacks five layers: a seeded brain simulator (areas, k-WTA
projection, multiplicative Hebbian plasticity), categorical value encoders,
an SCM engine for data generation and interventional/counterfactual
sampling, the directed-binding mechanism with its warm-ramp gain schedule,
and dual directional readouts (synaptic asymmetry and propagation overlap)
validated by do-calculus checks. The harness module orchestrates full runs.
"""

from .binding import (ADAPTIVE_SOFT, PARALLEL_BASELINE, BindingConfig,
                      BindingLog, GainSchedule, bind_link, ramp_beta,
                      run_binding)
from .brain import (Brain, BrainConfig, Connectome, NeuronArea,
                    hebbian_update, input_area_name, select_topk)
from .encoding import (ExternalInput, IndexEncoder, IndexEncodingConfig,
                       RateEncoder, RateEncodingConfig, ValueCategory,
                       encode_index, encode_rate, separation_scale)
from .fixtures import (ALZHEIMER_EDGES, DROPOUT_EDGES, builtin_alzheimer_scm,
                       builtin_dropout_scm)
from .formation import (Assembly, form_assembly, stability_matrix,
                        winner_overlap)
from .harness import (ConfigError, RunConfig, RunReport, StageError,
                      emit_outputs, run_diagnostic, run_folds,
                      run_robustness, run_single)
from .readout import (PROPAGATION, SYNAPTIC, PairScore, TopKResult,
                      precision_at_k, propagate_analytic, propagation_delta,
                      rank_and_select, recall_at_k, score_all_pairs,
                      synaptic_score)
from .scm import (DirectedGraph, ObservationTable, ScmDefinition,
                  VariableSpec, emit_spec, enumerate_joint, load_spec,
                  sample_counterfactual, sample_interventional,
                  sample_observational)
from .validation import (AdjustmentSet, backdoor_estimate,
                         counterfactual_consistency, oracle_ate,
                         parent_adjustment_set, run_do_checks)

__version__ = "0.1.0"
