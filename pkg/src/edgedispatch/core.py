"""Shared domain types: model catalog, profiling tables, requests, outcomes.

Everything here is an immutable value object, safe to share across
threads and sessions. Validation happens at construction; downstream
modules can assume the invariants hold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import LEVEL_ALPHAS, LEVEL_TOP5_ACCURACY


class ValidationError(ValueError):
    """A domain value violates a construction invariant."""


@dataclass(frozen=True)
class ModelVariant:
    """One entry of the model catalog."""

    level_index: int
    alpha: float
    top5_accuracy: float


@dataclass(frozen=True)
class ModelCatalog:
    """Ordered ladder of model variants, most accurate first.

    Level index grows with approximation: accuracy strictly decreases and
    the width multiplier strictly decreases as the index increases.
    """

    levels: tuple[ModelVariant, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValidationError("catalog must contain at least one level")
        for i, lvl in enumerate(self.levels):
            if lvl.level_index != i:
                raise ValidationError(f"level indices must be 0..{len(self.levels) - 1} contiguous")
            if not 0.0 < lvl.top5_accuracy <= 1.0:
                raise ValidationError(f"accuracy of level {i} must be in (0, 1]")
        for a, b in zip(self.levels, self.levels[1:]):
            if b.top5_accuracy >= a.top5_accuracy:
                raise ValidationError("top-5 accuracy must strictly decrease with level index")
            if b.alpha >= a.alpha:
                raise ValidationError("alpha must strictly decrease with level index")

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    @property
    def deepest_level(self) -> int:
        return len(self.levels) - 1

    @property
    def max_accuracy(self) -> float:
        return self.levels[0].top5_accuracy

    def accuracy(self, level: int) -> float:
        return self.levels[level].top5_accuracy

    def accuracies(self) -> tuple[float, ...]:
        return tuple(lvl.top5_accuracy for lvl in self.levels)


def default_catalog() -> ModelCatalog:
    """The built-in six-level catalog (see constants.py)."""
    return ModelCatalog(
        tuple(
            ModelVariant(level_index=i, alpha=a, top5_accuracy=acc)
            for i, (a, acc) in enumerate(zip(LEVEL_ALPHAS, LEVEL_TOP5_ACCURACY))
        )
    )


def catalog_from_accuracies(accuracies: tuple[float, ...] | list[float]) -> ModelCatalog:
    """Build a catalog from an accuracy ladder alone (synthetic tables, tests).

    Alphas are synthesized as a strictly decreasing ramp; they carry no
    meaning beyond satisfying the catalog invariants.
    """
    n = len(accuracies)
    return ModelCatalog(
        tuple(
            ModelVariant(level_index=i, alpha=float(n - i), top5_accuracy=float(acc))
            for i, acc in enumerate(accuracies)
        )
    )


@dataclass(frozen=True)
class ProfilingTable:
    """Per-node inferences/sec at each approximation level.

    ``perf[level][col]`` is the throughput of node ``node_ids[col]`` running
    the variant at ``level``. Columns must be non-decreasing in the level
    index: a deeper approximation never slows a node down. The dispatch
    pruning step relies on that monotonicity, so it is a hard constraint.
    """

    node_ids: tuple[str, ...]
    perf: tuple[tuple[float, ...], ...]
    catalog: ModelCatalog

    def __post_init__(self) -> None:
        if len(set(self.node_ids)) != len(self.node_ids):
            raise ValidationError("node ids must be unique")
        if len(self.perf) != len(self.catalog):
            raise ValidationError(
                f"table has {len(self.perf)} rows but catalog has {len(self.catalog)} levels"
            )
        for j, row in enumerate(self.perf):
            if len(row) != len(self.node_ids):
                raise ValidationError(f"row {j} width {len(row)} != {len(self.node_ids)} nodes")
            for i, v in enumerate(row):
                if not math.isfinite(v) or v <= 0.0:
                    raise ValidationError(f"perf[{j}][{i}] must be finite and > 0, got {v!r}")
        for i in range(len(self.node_ids)):
            for j in range(1, len(self.perf)):
                if self.perf[j][i] < self.perf[j - 1][i]:
                    raise ValidationError(
                        f"column {self.node_ids[i]!r} must be non-decreasing in level "
                        f"(level {j}: {self.perf[j][i]} < {self.perf[j - 1][i]})"
                    )

    @property
    def num_levels(self) -> int:
        return len(self.perf)

    @property
    def num_nodes(self) -> int:
        return len(self.node_ids)

    def column(self, node_id: str) -> tuple[float, ...]:
        i = self.node_ids.index(node_id)
        return tuple(row[i] for row in self.perf)

    def cluster_total(self, level: int) -> float:
        return sum(self.perf[level])

    def restrict(self, node_ids: tuple[str, ...] | list[str]) -> "ProfilingTable":
        """Sub-table over the given nodes, in the given order."""
        idx = [self.node_ids.index(n) for n in node_ids]
        return ProfilingTable(
            node_ids=tuple(node_ids),
            perf=tuple(tuple(row[i] for i in idx) for row in self.perf),
            catalog=self.catalog,
        )


@dataclass(frozen=True)
class InferenceRequest:
    """One queued batch of images with its performance/accuracy targets."""

    id: int
    batch_size: int
    perf_req: float
    acc_req: float

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ValidationError("batch_size must be >= 1")
        if not math.isfinite(self.perf_req) or self.perf_req <= 0.0:
            raise ValidationError("perf_req must be finite and > 0")
        if not 0.0 < self.acc_req <= 1.0:
            raise ValidationError("acc_req must be in (0, 1]")


@dataclass(frozen=True)
class NodeAssignment:
    """Share of one node: image count, approximation level, predicted rate."""

    node_id: str
    images: int
    level: int
    predicted_perf: float


@dataclass(frozen=True)
class Assignment:
    """Full workload split for a request, with predicted feasibility flags."""

    entries: tuple[NodeAssignment, ...]
    feasible_perf: bool
    feasible_acc: bool
    predicted_weighted_accuracy: float

    @property
    def total_images(self) -> int:
        return sum(e.images for e in self.entries)

    def levels(self) -> tuple[int, ...]:
        return tuple(e.level for e in self.entries)

    def images_for(self, node_id: str) -> int:
        for e in self.entries:
            if e.node_id == node_id:
                return e.images
        raise KeyError(node_id)

    def validate(self, batch_size: int, catalog: ModelCatalog) -> None:
        """Check conservation and level bounds against a request/catalog."""
        if self.total_images != batch_size:
            raise ValidationError(
                f"assignment covers {self.total_images} images, request has {batch_size}"
            )
        for e in self.entries:
            if e.images < 0:
                raise ValidationError(f"negative image count for {e.node_id!r}")
            if not 0 <= e.level < len(catalog):
                raise ValidationError(f"level {e.level} out of catalog range for {e.node_id!r}")


def weighted_accuracy(assignment: Assignment, catalog: ModelCatalog) -> float:
    """Batch-level expected top-5 accuracy of an assignment.

    Each node's catalog accuracy weighted by its image share. Undefined for
    an empty batch.
    """
    total = assignment.total_images
    if total == 0:
        raise ValidationError("weighted accuracy is undefined for an empty batch")
    return sum(e.images * catalog.accuracy(e.level) for e in assignment.entries) / total


@dataclass(frozen=True)
class NodeOutcome:
    """Observed result of one node for one request.

    ``elapsed`` is the node's completion instant on the request's model
    clock (seconds since the first dispatch), so the slowest entry bounds
    the whole request.
    """

    node_id: str
    elapsed: float
    images: int
    correct: int


@dataclass(frozen=True)
class RequestOutcome:
    """Measured throughput/accuracy of a serviced request."""

    request_id: int
    achieved_throughput: float
    empirical_top5: float
    per_node: tuple[NodeOutcome, ...]
    perf_violation: bool
    acc_violation: bool

    @property
    def execution_time(self) -> float:
        return max((n.elapsed for n in self.per_node), default=0.0)


def make_outcome(
    request: InferenceRequest, per_node: tuple[NodeOutcome, ...]
) -> RequestOutcome:
    """Aggregate per-node results into a request outcome with violation flags."""
    if not per_node:
        raise ValidationError("an outcome needs at least one node entry")
    slowest = max(n.elapsed for n in per_node)
    if slowest <= 0.0:
        raise ValidationError("completion time must be positive")
    throughput = request.batch_size / slowest
    top5 = sum(n.correct for n in per_node) / request.batch_size
    return RequestOutcome(
        request_id=request.id,
        achieved_throughput=throughput,
        empirical_top5=top5,
        per_node=per_node,
        perf_violation=throughput < request.perf_req,
        acc_violation=top5 < request.acc_req,
    )
