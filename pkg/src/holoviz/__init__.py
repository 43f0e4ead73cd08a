"""holoviz: tabular data to interactive 3D scatter scenes and multi-view
quilt light-field renders.

Pipeline: CSV ingest -> channel mapping -> scene -> multi-view camera rig
-> software rasterizer -> quilt image. A FastAPI service and a CLI wrap
the pipeline; the raster kernel runs compiled (Cython) when built, with a
bit-identical numpy fallback.
"""

from .ingest import Dataset, ingest_csv, parse_csv
from .mapping import ChannelMapping, apply_mapping, default_mapping
from .multiview import QuiltConfig, rig_views, view_angles
from .render import render_quilt, render_view
from .scene import Scene, deserialize_scene, serialize_scene

__version__ = "0.1.0"

__all__ = [
    "ChannelMapping",
    "Dataset",
    "QuiltConfig",
    "Scene",
    "apply_mapping",
    "default_mapping",
    "deserialize_scene",
    "ingest_csv",
    "parse_csv",
    "render_quilt",
    "render_view",
    "rig_views",
    "serialize_scene",
    "view_angles",
    "__version__",
]
