"""Project-wide model constants.

The six-variant image-classification catalog: multiplier widths and the
top-5 accuracy ladder. Level 0 is the widest (most accurate) variant;
accuracy endpoints are 0.925 and 0.829 and the four interior levels are
fixed by linear interpolation between them. Tests reference these
constants instead of repeating magic numbers.
"""

# Multiplier width per approximation level, widest first.
LEVEL_ALPHAS = (1.4, 1.3, 1.0, 0.75, 0.5, 0.35)

# Top-5 accuracy per level. Interior values: 0.925 - k * (0.925 - 0.829) / 5.
LEVEL_TOP5_ACCURACY = (0.925, 0.9058, 0.8866, 0.8674, 0.8482, 0.829)

NUM_LEVELS = len(LEVEL_ALPHAS)

# Grid resolution of the dispatch solver, in inferences/sec. Performance
# values and targets are snapped to this grid inside the policy engine.
PERF_RESOLUTION = 0.01

# Accuracy values are compared at micro-unit resolution inside the policy
# engine (exact for catalogs quoted to <= 6 decimal places).
ACC_RESOLUTION = 1e-6
