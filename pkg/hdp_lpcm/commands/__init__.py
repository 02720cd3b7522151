# pylint: disable=missing-module-docstring

from .actions.diagnose import diagnose
from .actions.evaluate import evaluate
from .actions.fit import fit
from .actions.simulate import simulate
from .actions.summarize import summarize
