from fairpart.data.instance import (
    AdditiveOracle,
    FriendshipGraph,
    Instance,
    MonotoneValuationOracle,
    Partition,
    SizeVector,
    UtilityProfile,
    classify_utilities,
    validate_partition,
)
from fairpart.data.decomposition import DecompositionNode, NiceTreeDecomposition
from fairpart.data.parser import (
    parse_instance,
    parse_partition,
    read_instance,
    read_partition,
    serialize_instance,
    serialize_partition,
    write_instance,
    write_partition,
)

__all__ = [
    "AdditiveOracle",
    "FriendshipGraph",
    "Instance",
    "MonotoneValuationOracle",
    "Partition",
    "SizeVector",
    "UtilityProfile",
    "classify_utilities",
    "validate_partition",
    "DecompositionNode",
    "NiceTreeDecomposition",
    "parse_instance",
    "parse_partition",
    "read_instance",
    "read_partition",
    "serialize_instance",
    "serialize_partition",
    "write_instance",
    "write_partition",
]
