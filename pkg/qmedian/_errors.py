# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

__all__ = [
    "QmedianError", "ValidationError", "InternalInvariantViolation",
    "SizeLimitExceeded", "Disconnected", "DisconnectedPair",
    "NotQuasiMedian", "NotMedian", "NotGated", "EmptySet", "MixedGraphs",
    "PointedSplit", "NotFound",
    "MarginTooSmall", "WindowTooSmall",
    "NotCoarselySeparating", "NotCodimensionOne",
    "NotAutomorphism", "PrerequisiteFailed"]


class QmedianError(Exception):
    """Base class of every error raised by this package"""


class ValidationError(QmedianError, ValueError):
    """Malformed input data or invalid argument"""


class InternalInvariantViolation(QmedianError, RuntimeError):
    """
    A property guaranteed by theory did not hold on a computed structure.

    This always denotes a bug, either in this package or in the theory it
    implements.
    """


class SizeLimitExceeded(QmedianError):
    """An input or an intermediate structure exceeds a configured cap"""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class Disconnected(QmedianError):
    """The operation requires a connected graph"""


class DisconnectedPair(QmedianError):
    def __init__(self, a, b):
        super().__init__(f"no path between vertices {a} and {b}")
        self.pair = (a, b)


class NotQuasiMedian(QmedianError):
    def __init__(self, report=None):
        super().__init__("graph is not quasi-median")
        self.report = report


class NotMedian(QmedianError):
    def __init__(self, msg="graph is not median"):
        super().__init__(msg)


class NotGated(QmedianError):
    def __init__(self, vertex, nearest):
        super().__init__(
            f"vertex {vertex} has no gate (nearest points: "
            f"{sorted(nearest)})")
        self.vertex = vertex
        self.nearest = tuple(sorted(nearest))


class EmptySet(QmedianError, ValueError):
    """A vertex set argument was empty"""


class MixedGraphs(QmedianError, ValueError):
    """Objects coming from distinct graphs were combined"""


class PointedSplit(InternalInvariantViolation):
    def __init__(self, components):
        super().__init__(
            f"pointed selectors spread over {len(components)} components")
        self.components = tuple(components)


class NotFound(QmedianError):
    def __init__(self, what, bounds):
        super().__init__(f"{what}: no witness found within {bounds}")
        self.what = what
        self.bounds = dict(bounds)


class MarginTooSmall(QmedianError):
    """The subgroup enumeration may truncate the neighbourhood in the window"""


class WindowTooSmall(QmedianError):
    """No component of the window can reach the requested depth"""


class NotCoarselySeparating(QmedianError):
    def __init__(self, deep_count):
        super().__init__(
            f"need at least 2 deep components, found {deep_count}")
        self.deep_count = deep_count


class NotCodimensionOne(QmedianError):
    def __init__(self, class_count):
        super().__init__(
            f"need at least 2 orbit classes of deep components, found "
            f"{class_count}")
        self.class_count = class_count


class NotAutomorphism(QmedianError, ValueError):
    def __init__(self, generator, edge):
        super().__init__(
            f"generator #{generator} does not preserve edge {tuple(edge)}")
        self.generator = generator
        self.edge = tuple(edge)


class PrerequisiteFailed(QmedianError):
    """The hypotheses required by a check do not hold"""
