"""Builtin SCM fixtures.

The Alzheimer network (10 variables, 12 directed links) is the primary
evaluation fixture. Its mechanisms are categorical CPTs with monotone parent
effects: every parent, when fully active, shifts at least 0.2 probability
mass toward the child's positive state, and all probabilities stay inside
[0.05, 0.95] so every adjustment stratum keeps support at moderate sample
sizes. Monotonicity plus inverse-CDF noise reuse makes per-unit
counterfactual effect signs deterministic.

The education-dropout network is a smaller secondary fixture exercising the
same machinery (including a sign-negative mechanism); it carries no tuned
targets.
"""

from __future__ import annotations

import numpy as np

from .scm import DirectedGraph, ScmDefinition, VariableSpec

ALZHEIMER_EDGES = [
    ("APOE4", "Amyloid"),
    ("Education", "PhysicalActivity"),
    ("Education", "Diet"),
    ("PhysicalActivity", "Cholesterol"),
    ("Diet", "Cholesterol"),
    ("SleepQuality", "Inflammation"),
    ("Cholesterol", "Inflammation"),
    ("Inflammation", "Amyloid"),
    ("Amyloid", "Tau"),
    ("Tau", "CognitiveDecline"),
    ("Amyloid", "CognitiveDecline"),
    ("Education", "CognitiveDecline"),
]


def linear_binary_cpt(parent_cards: list[int], base: float,
                      coefs: list[float]) -> np.ndarray:
    """Binary CPT with P(child=1 | parents) = base + sum(coef * state).

    One coefficient per parent, applied to that parent's integer state.
    """
    shape = tuple(parent_cards) + (2,)
    cpt = np.zeros(shape)
    grids = np.meshgrid(*[np.arange(c) for c in parent_cards], indexing="ij")
    p1 = np.full(grids[0].shape if grids else (), base, dtype=np.float64)
    for g, c in zip(grids, coefs):
        p1 = p1 + c * g
    if (p1 <= 0).any() or (p1 >= 1).any():
        raise ValueError("linear CPT leaves [0, 1]")
    cpt[..., 1] = p1
    cpt[..., 0] = 1.0 - p1
    return cpt


def builtin_alzheimer_scm() -> ScmDefinition:
    """The 10-variable, 12-link Alzheimer ground-truth network."""
    nodes = [
        VariableSpec("APOE4", 2, 1),
        VariableSpec("Education", 3, 2),
        VariableSpec("PhysicalActivity", 2, 1),
        VariableSpec("Diet", 2, 1),
        VariableSpec("SleepQuality", 2, 1),
        VariableSpec("Cholesterol", 3, 2),
        VariableSpec("Inflammation", 2, 1),
        VariableSpec("Amyloid", 2, 1),
        VariableSpec("Tau", 2, 1),
        VariableSpec("CognitiveDecline", 2, 1),
    ]
    graph = DirectedGraph(nodes, ALZHEIMER_EDGES)

    cholesterol = np.array([
        [[0.55, 0.30, 0.15],   # activity=0, diet=0
         [0.35, 0.30, 0.35]],  # activity=0, diet=1
        [[0.35, 0.30, 0.35],   # activity=1, diet=0
         [0.15, 0.30, 0.55]],  # activity=1, diet=1
    ])
    cpts = {
        "APOE4": np.array([0.70, 0.30]),
        "Education": np.array([0.30, 0.40, 0.30]),
        "SleepQuality": np.array([0.60, 0.40]),
        "PhysicalActivity": linear_binary_cpt([3], 0.25, [0.25]),
        "Diet": linear_binary_cpt([3], 0.20, [0.25]),
        "Cholesterol": cholesterol,
        "Inflammation": linear_binary_cpt([2, 3], 0.15, [0.25, 0.20]),
        "Amyloid": linear_binary_cpt([2, 2], 0.12, [0.30, 0.30]),
        "Tau": linear_binary_cpt([2], 0.15, [0.55]),
        "CognitiveDecline": linear_binary_cpt([2, 2, 3], 0.05, [0.30, 0.25, 0.10]),
    }
    return ScmDefinition(graph, cpts)


DROPOUT_EDGES = [
    ("FamilyIncome", "ParentalSupport"),
    ("FamilyIncome", "Attendance"),
    ("ParentalSupport", "StudyHours"),
    ("StudyHours", "GradeAverage"),
    ("Attendance", "GradeAverage"),
    ("GradeAverage", "Dropout"),
    ("Attendance", "Dropout"),
]


def builtin_dropout_scm() -> ScmDefinition:
    """Education-dropout network: 6 variables, 7 links, no tuned targets."""
    nodes = [
        VariableSpec("FamilyIncome", 2, 1),
        VariableSpec("ParentalSupport", 2, 1),
        VariableSpec("StudyHours", 2, 1),
        VariableSpec("Attendance", 2, 1),
        VariableSpec("GradeAverage", 3, 2),
        VariableSpec("Dropout", 2, 1),
    ]
    graph = DirectedGraph(nodes, DROPOUT_EDGES)

    grade = np.array([
        [[0.60, 0.30, 0.10],   # hours=0, attendance=0
         [0.40, 0.35, 0.25]],  # hours=0, attendance=1
        [[0.40, 0.35, 0.25],   # hours=1, attendance=0
         [0.15, 0.35, 0.50]],  # hours=1, attendance=1
    ])
    cpts = {
        "FamilyIncome": np.array([0.55, 0.45]),
        "ParentalSupport": linear_binary_cpt([2], 0.30, [0.35]),
        "Attendance": linear_binary_cpt([2], 0.40, [0.30]),
        "StudyHours": linear_binary_cpt([2], 0.30, [0.35]),
        "GradeAverage": grade,
        # dropout falls with grade and attendance
        "Dropout": linear_binary_cpt([3, 2], 0.70, [-0.20, -0.20]),
    }
    return ScmDefinition(graph, cpts)


BUILTIN_FIXTURES = {
    "alzheimer": builtin_alzheimer_scm,
    "dropout": builtin_dropout_scm,
}
