"""Random group wallspace toolkit."""

try:  # installed wheel layout: extension lives inside the package
    from . import _relsep as _impl
except ImportError:  # build-tree layout: extension on PYTHONPATH
    import _relsep as _impl

ConfigError = _impl.ConfigError
RelsepError = _impl.RelsepError
aspherical_checks = _impl.aspherical_checks
check_sc = _impl.check_sc
concentration_trial = _impl.concentration_trial
count_words = _impl.count_words
halve = _impl.halve
max_piece = _impl.max_piece
run_pipeline = _impl.run_pipeline
sample = _impl.sample
sc_frequency_trial = _impl.sc_frequency_trial

__all__ = [
    "ConfigError",
    "RelsepError",
    "aspherical_checks",
    "check_sc",
    "concentration_trial",
    "count_words",
    "halve",
    "max_piece",
    "run_pipeline",
    "sample",
    "sc_frequency_trial",
]
