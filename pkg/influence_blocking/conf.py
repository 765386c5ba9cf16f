from django.conf import settings

DEFAULTS = {
    'SOLVER_BACKEND': 'reference',
    'MILP_ABS_GAP': 1e-6,
    'MILP_REL_GAP': 1e-9,
    'MILP_NODE_LIMIT': 200000,
    'MILP_TIME_LIMIT': None,
    'EVAL_REPLICAS': 1000,
    'GREEDY_REPLICAS': 200,
    'INFLUENCE_CENTRALITY_REPLICAS': 100,
    'FOREST_FIRE_FORWARD': 0.7,
    'PAGERANK_DAMPING': 0.85,
    'PAGERANK_TOL': 1e-10,
    'PAGERANK_MAX_ITER': 200,
    'BRUTE_FORCE_BR_LIMIT': 10 ** 6,
    'BRUTE_FORCE_DEFENSE_LIMIT': 10 ** 7,
    'CG_MAX_ITERATIONS': 500,
    'CG_TIME_LIMIT': None,
    'BENCH_WORKERS': 1,
    'BENCH_OUTPUT_DIR': 'results',
    'DATASET_DIR': 'datasets',
}


def app_setting(name):
    """Look up ``name`` in ``settings.INFLUENCE_BLOCKING``, falling back to DEFAULTS."""
    overrides = getattr(settings, 'INFLUENCE_BLOCKING', {}) if settings.configured else {}
    if name in overrides:
        return overrides[name]
    return DEFAULTS[name]
