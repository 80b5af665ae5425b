"""algext - exact-arithmetic workbench for graded ring extensions."""

from lib.api import Workbench, __version__
from lib.documents import Instance
from lib.models import GeneratorParams, InstanceDocument, ModuleDocument, ReportDocument

__all__ = [
    "GeneratorParams",
    "Instance",
    "InstanceDocument",
    "ModuleDocument",
    "ReportDocument",
    "Workbench",
    "__version__",
]
