"""quatbench: quaternion vs rotation-matrix feature benchmark.

Core package layout:
- quats: quaternion algebra and rotation-matrix conversion
- data: seeded dataset generation, featurization, splitting, import/export
- classifiers: the five from-scratch models behind one fit/predict contract
- metrics: classification scores, ratio losses, learning curves
- experiment: full benchmark runs and artifact rendering
- app / schemas: FastAPI service wrapping the experiment
- cli: thin HTTP client exposing run / gen / score subcommands
"""

__version__ = "0.1.0"
