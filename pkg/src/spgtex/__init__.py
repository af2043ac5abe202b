"""Shortest-path pixel-graph color texture descriptors in HSI space.

A color texture is converted to quantized hue/saturation/intensity
planes, covered by a grid of blocks, and each block is modeled as one or
two weighted pixel graphs (hue alone; saturation and intensity coupled).
Directional shortest-path costs per block, pooled into means and standard
deviations, form the texture descriptor; a 1NN harness evaluates it under
leave-one-out and repeated stratified holdout protocols.
"""

__version__ = "0.1.0"

from .classify import (  # noqa: E402,F401
    EvalReport,
    LabeledFeature,
    average_rgb_features,
    eval_holdout,
    eval_loocv,
    nn_predict,
)
from .colorspace import HsiImage, RgbImage, convert_image, rgb_to_hsi_pixel  # noqa: F401
from .dataset import (  # noqa: F401
    CorpusManifest,
    FeatureCache,
    extract_corpus,
    load_rgb_image,
    scan_corpus,
)
from .features import (  # noqa: F401
    block_path_costs,
    extract_multiscale,
    extract_scale,
    feature_names,
    partition_blocks,
)
from .graphmodel import (  # noqa: F401
    Block,
    BlockGraph,
    VertexId,
    build_single_layer,
    build_two_layer,
    edge_weight,
)
from .pathengine import (  # noqa: F401
    Direction,
    DIRECTIONS,
    PathQuery,
    PathResult,
    block_endpoints,
    shortest_path_cost,
)
