"""Shared random-instance generators for property tests."""

from cryptomix import (
    AttackMethod,
    AttackerParams,
    DefenderBudgets,
    DefenderWeights,
    EncryptionAlgorithm,
    GameInstance,
)


def random_methods(rng, n, max_cost=100, integer_costs=True):
    methods = []
    for i in range(n):
        if integer_costs:
            cost = float(rng.integers(0, max_cost + 1))
        else:
            cost = float(rng.uniform(0.0, max_cost))
        methods.append(AttackMethod(f"m{i:02d}", float(rng.uniform(0.05, 0.95)), cost))
    return tuple(methods)


def bare_algorithm(methods, alg_id="target"):
    """Algorithm wrapper when only the attack subgame matters."""
    return EncryptionAlgorithm(
        id=alg_id,
        op_cost=0.0,
        cpu_cost=0.0,
        mem_cost=0.0,
        latency=0.0,
        resilience=0.0,
        protected_value=1.0,
        family=0,
        attacks=methods,
    )


def random_feasible_instance(rng):
    """Random defender instance whose polytope is nonempty by construction:
    resource caps sit at the per-column max, the resilience floor at the
    min, and family caps sum to at least 1."""
    n = int(rng.integers(2, 9))
    families = [int(f) for f in rng.integers(0, 3, n)]
    algs = []
    for i in range(n):
        algs.append(
            EncryptionAlgorithm(
                id=f"alg{i}",
                op_cost=float(rng.uniform(0.1, 5.0)),
                cpu_cost=float(rng.uniform(1e3, 1e6)),
                mem_cost=float(rng.uniform(10, 5000)),
                latency=float(rng.uniform(1, 1000)),
                resilience=float(rng.uniform(0.0, 1.0)),
                protected_value=float(rng.uniform(50, 200)),
                family=families[i],
                attacks=random_methods(rng, int(rng.integers(0, 5)), max_cost=30),
            )
        )
    present = sorted(set(families))
    if len(present) == 1:
        caps = {present[0]: 1.0}
    else:
        caps = {fam: float(rng.uniform(0.5, 1.0)) for fam in present}
    budgets = DefenderBudgets(
        c_op_max=max(a.op_cost for a in algs),
        c_cpu_max=max(a.cpu_cost for a in algs),
        c_mem_max=max(a.mem_cost for a in algs),
        t_max=max(a.latency for a in algs),
        r_min=min(a.resilience for a in algs),
        family_caps=caps,
    )
    weights = DefenderWeights(g_op=0.02, g_cpu=2e-5, g_mem=0.002, g_tau=0.001, g_r=0.06)
    attacker = AttackerParams(
        value=float(rng.uniform(50, 500)), budget=float(rng.integers(0, 61))
    )
    return GameInstance(
        algorithms=tuple(algs), weights=weights, budgets=budgets, attacker=attacker
    )
