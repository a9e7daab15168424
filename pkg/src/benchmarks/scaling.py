"""
Scaling Benchmarks
Wall-time sweeps over catalog size and flat-versus-decomposed comparisons
"""

import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Union

import pandas as pd
from loguru import logger
from tqdm import tqdm

from core.config import QuadcopterSettings
from core.exceptions import InfeasibleModel
from decomposition.decomposer import Decomposer
from pareto.front_engine import EngineConfig, FrontEngine
from pareto.front_models import ParetoFront

from .quadcopter import (
    QuadcopterVariant, build_quadcopter_model, generate_quadcopter_catalogs, quadcopter_specs,
)

PathLike = Union[str, Path]


@dataclass
class ScalingRow:
    """One point of a scaling sweep"""
    catalog_size: int
    combinations: int
    wall_seconds: float
    front_size: int
    nodes: int


@dataclass
class DecompositionComparison:
    """Flat and decomposed solves of the same model"""
    catalog_size: int
    flat_seconds: float
    decomposed_seconds: float
    speedup: float
    flat_front_size: int
    decomposed_front_size: int
    fronts_equal: bool


class ScalingBenchmark:
    """
    Quadcopter benchmark runner

    Every run regenerates the synthetic catalogs from the same seed, so
    repeated sweeps measure identical instances.
    """

    def __init__(
        self,
        config: Optional[EngineConfig] = None,
        seed: int = 0,
        generator_dir: Optional[PathLike] = None,
        settings: Optional[QuadcopterSettings] = None,
        show_progress: bool = True,
    ):
        """
        Initialize scaling benchmark

        Args:
            config: Engine configuration
            seed: Base seed of the synthetic catalogs
            generator_dir: Directory of generator specs (default: config/generators)
            settings: Quadcopter constants
            show_progress: Show a tqdm progress bar
        """
        self.config = config or EngineConfig()
        self.seed = seed
        self.generator_dir = generator_dir
        self.settings = settings
        self.show_progress = show_progress
        logger.info(f"Scaling Benchmark initialized (seed={seed})")

    def _model(self, size: int, variant: QuadcopterVariant):
        catalogs = generate_quadcopter_catalogs(size, self.seed, self.generator_dir)
        return build_quadcopter_model(variant, catalogs=catalogs, settings=self.settings)

    def run_scaling_sweep(
        self,
        sizes: Iterable[int],
        variant: Union[QuadcopterVariant, str] = QuadcopterVariant.SINGLE,
    ) -> List[ScalingRow]:
        """
        Solve the quadcopter model at increasing catalog sizes

        Args:
            sizes: Components per catalog
            variant: Quadcopter variant

        Returns:
            One row per size; an infeasible instance has front_size 0
        """
        variant = QuadcopterVariant(variant)
        rows: List[ScalingRow] = []
        sizes = list(sizes)
        for size in tqdm(sizes, desc="scaling", disable=not self.show_progress):
            model = self._model(size, variant)
            engine = FrontEngine(self.config)
            start = time.perf_counter()
            try:
                front_size = len(engine.compute_front(model))
            except InfeasibleModel:
                front_size = 0
            row = ScalingRow(
                catalog_size=size,
                combinations=model.combinations(),
                wall_seconds=time.perf_counter() - start,
                front_size=front_size,
                nodes=engine.statistics.nodes_expanded,
            )
            logger.info(
                f"size {size}: {row.combinations} combinations, {row.front_size} points "
                f"in {row.wall_seconds:.3f}s"
            )
            rows.append(row)
        return rows

    def compare_flat_vs_decomposed(
        self,
        size: int,
        variant: Union[QuadcopterVariant, str] = QuadcopterVariant.MULTI,
    ) -> DecompositionComparison:
        """
        Time a flat and a decomposed solve of one instance

        Raises:
            InfeasibleModel: The generated instance is infeasible
        """
        variant = QuadcopterVariant(variant)
        model = self._model(size, variant)

        start = time.perf_counter()
        flat = FrontEngine(self.config).compute_front(model)
        flat_seconds = time.perf_counter() - start

        start = time.perf_counter()
        decomposed = Decomposer(self.config).solve(model, quadcopter_specs()).front
        decomposed_seconds = time.perf_counter() - start

        comparison = DecompositionComparison(
            catalog_size=size,
            flat_seconds=flat_seconds,
            decomposed_seconds=decomposed_seconds,
            speedup=flat_seconds / decomposed_seconds if decomposed_seconds > 0 else float("inf"),
            flat_front_size=len(flat),
            decomposed_front_size=len(decomposed),
            fronts_equal=_same_vectors(flat, decomposed),
        )
        logger.info(
            f"size {size}: flat {flat_seconds:.3f}s, decomposed {decomposed_seconds:.3f}s "
            f"(x{comparison.speedup:.1f}), fronts equal: {comparison.fronts_equal}"
        )
        return comparison


def _same_vectors(first: ParetoFront, second: ParetoFront) -> bool:
    return first.vectors() == second.vectors()


def rows_to_frame(rows: Iterable[object]) -> pd.DataFrame:
    """Benchmark rows as a DataFrame, one column per field"""
    return pd.DataFrame([asdict(row) for row in rows])


def write_rows(rows: Iterable[object], path: PathLike) -> Path:
    """Write benchmark rows as CSV"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows_to_frame(rows).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote benchmark table to {path}")
    return path


def run_scaling_sweep(
    sizes: Iterable[int],
    seed: int = 0,
    config: Optional[EngineConfig] = None,
    variant: Union[QuadcopterVariant, str] = QuadcopterVariant.SINGLE,
) -> List[ScalingRow]:
    return ScalingBenchmark(config, seed, show_progress=False).run_scaling_sweep(sizes, variant)


def compare_flat_vs_decomposed(
    size: int,
    seed: int = 0,
    config: Optional[EngineConfig] = None,
    variant: Union[QuadcopterVariant, str] = QuadcopterVariant.MULTI,
) -> DecompositionComparison:
    return ScalingBenchmark(config, seed, show_progress=False).compare_flat_vs_decomposed(size, variant)
