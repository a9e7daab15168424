"""
Random Models
Seeded random instances with consistent polarities, for cross-checking solvers
"""

from typing import List, Tuple

import numpy as np

from core.expressions import Constant, PropertyKey, ref, sum_of
from core.system_models import (
    Catalog, Constraint, Direction, Metric, Objective, Relation, SystemModel,
)
from decomposition.subsystem_models import AggregationRewrite, SubsystemSpec

PROPERTIES = ["cost", "mass", "load", "capacity", "perf"]


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _catalog(rng: np.random.Generator, name: str, size: int, levels: int = 0) -> Catalog:
    columns = list(PROPERTIES) + (["level"] if levels else [])
    values = rng.integers(1, 100, size=(size, len(PROPERTIES)))
    if levels:
        values = np.hstack([values, rng.integers(0, levels, size=(size, 1))])
    rows = [(f"{name.lower()}-{i + 1}", [float(v) for v in values[i]]) for i in range(size)]
    return Catalog.from_rows(name, columns, rows)


def random_model(
    seed: int,
    n_vars: int = 4,
    size: int = 8,
    n_objectives: int = 2,
    levels: int = 0,
) -> SystemModel:
    """
    Random model whose properties are all consistent

    Variables V1..Vn hold integer-valued cost, mass, load, capacity and
    perf columns. Neighbouring variables are linked by
    `Vi.load <= Vi+1.capacity`, total mass is capped at 40-60% of its
    largest possible value, and the objectives are total cost, total
    mass and (with three objectives) total perf.

    Args:
        seed: PCG64 seed
        n_vars: Number of variables
        size: Tuples per catalog
        n_objectives: 1, 2 or 3
        levels: If set, adds a 'level' column with this many distinct values

    Returns:
        SystemModel (not necessarily feasible)
    """
    if not 1 <= n_objectives <= 3:
        raise ValueError("n_objectives must be 1, 2 or 3")
    rng = _rng(seed)
    names = [f"V{i + 1}" for i in range(n_vars)]
    catalogs = {name: _catalog(rng, name, size, levels) for name in names}

    heaviest = sum(max(c.column("mass")) for c in catalogs.values())
    cap = int(rng.integers(round(0.4 * heaviest), round(0.6 * heaviest) + 1))

    constraints = [
        Constraint(
            name=f"link_{i + 1}",
            lhs=ref(names[i], "load"),
            rhs=ref(names[i + 1], "capacity"),
            relation=Relation.LESS_OR_EQUAL,
        )
        for i in range(n_vars - 1)
    ]
    total_mass = sum_of([ref(n, "mass") for n in names])
    constraints.append(Constraint(
        name="mass_budget", lhs=total_mass, rhs=Constant(float(cap)),
        relation=Relation.LESS_OR_EQUAL,
    ))

    objectives = [
        Objective(name="cost", expr=sum_of([ref(n, "cost") for n in names]), direction=Direction.MINIMIZE),
        Objective(name="mass", expr=total_mass, direction=Direction.MINIMIZE),
        Objective(name="perf", expr=sum_of([ref(n, "perf") for n in names]), direction=Direction.MAXIMIZE),
    ][:n_objectives]
    return SystemModel(
        catalogs=catalogs,
        constraints=constraints,
        objectives=objectives,
        metrics=[Metric(name="mass", expr=total_mass)],
    )


def random_subsystem_instance(
    seed: int,
    n_vars: int = 4,
    size: int = 6,
    n_objectives: int = 2,
) -> Tuple[SystemModel, SubsystemSpec]:
    """Random model with the fully consistent subsystem {V1, V2}"""
    model = random_model(seed, n_vars=n_vars, size=size, n_objectives=n_objectives)
    rewrites: List[AggregationRewrite] = [
        AggregationRewrite(function_id="objective:cost", derived="sub_cost"),
        AggregationRewrite(
            function_id="constraint:mass_budget:lhs",
            derived="sub_mass",
            expr=ref("V1", "mass") + ref("V2", "mass"),
        ),
    ]
    if n_objectives >= 2:
        rewrites.append(AggregationRewrite(function_id="objective:mass", derived="sub_mass"))
    return model, SubsystemSpec(name="sub", variables=["V1", "V2"], aggregation_rewrites=rewrites)


def random_partition_instance(
    seed: int,
    n_vars: int = 4,
    size: int = 6,
    levels: int = 3,
) -> Tuple[SystemModel, SubsystemSpec]:
    """
    Random model whose subsystem {V1, V2} shares an equality

    `V2.level == V3.level` makes V2.level inconsistent; the returned
    spec declares it as a handle, so the subsystem is solved once per
    level value.
    """
    model = random_model(seed, n_vars=n_vars, size=size, levels=levels)
    constraints = list(model.constraints) + [Constraint(
        name="level_match",
        lhs=ref("V2", "level"),
        rhs=ref("V3", "level"),
        relation=Relation.EQUAL,
    )]
    model = model.replace(constraints=constraints)
    spec = SubsystemSpec(
        name="sub",
        variables=["V1", "V2"],
        declared_inconsistent_handles=[PropertyKey("V2", "level")],
    )
    return model, spec
