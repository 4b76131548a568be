"""Qubit-probe thermometry of a bosonic mode.

A qubit coupled to a thermal mode (Jaynes-Cummings or Rabi) is read out at a
handful of times; a k-nearest-neighbors classifier maps the expectation
values back to a temperature class. This package wraps the C++ core:

    >>> import qthermo
    >>> data = qthermo.generate(T_count=100, gamma_count=1, gamma_min=1.0,
    ...                         gamma_max=1.0, noise_rel_std=0.0,
    ...                         noise_target="none")
    >>> train, val = qthermo.split(data)
    >>> model = qthermo.fit(train, k=1)
    >>> labels, temperatures = model.predict(val.features)
"""

from ._core import (
    Dataset,
    KnnModel,
    canonical_times,
    cross_validate,
    evaluate,
    fit,
    generate,
    load_model,
    project,
    reproduce,
    reproduce_ids,
    save_model,
    split,
    trajectory,
)

__all__ = [
    "Dataset",
    "KnnModel",
    "canonical_times",
    "cross_validate",
    "evaluate",
    "fit",
    "generate",
    "load_model",
    "project",
    "reproduce",
    "reproduce_ids",
    "save_model",
    "split",
    "trajectory",
]

__version__ = "0.1.0"
