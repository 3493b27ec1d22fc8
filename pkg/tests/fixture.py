"""Synthetic 13-model x 13-dataset score fixture.

Generation procedure (fixed, documented, seeded):
  1. rng = numpy default_rng(seed=1306)
  2. skill[i] = i * 3.0 for models i = 0..12 (a mild overall ordering)
  3. noise[i, j] ~ Uniform(0, 40) drawn row-major
  4. score[i, j] = 20 + skill[i] + noise[i, j], clipped nowhere (all values
     stay inside (20, 96), valid on the 0-200 SMAPE scale)

The dataset noise dominates the skill gap, so most models are best
somewhere: the fixture reproduces the qualitative cherry-picking shape
(top-1 reportable fraction far above 1/13 for small subset sizes) without
encoding any real benchmark's numbers.
"""

import numpy as np

from bench_audit.metrics import ScoreMatrix

SEED = 1306
N_MODELS = 13
N_DATASETS = 13


def fixture_matrix() -> ScoreMatrix:
    rng = np.random.default_rng(SEED)
    skill = np.arange(N_MODELS, dtype=float) * 3.0
    noise = rng.uniform(0.0, 40.0, (N_MODELS, N_DATASETS))
    scores = 20.0 + skill[:, None] + noise
    return ScoreMatrix(
        tuple(f"model_{i:02d}" for i in range(N_MODELS)),
        tuple(f"dataset_{j:02d}" for j in range(N_DATASETS)),
        scores,
        "smape",
    )
