from dgmodcat.instances.corpus import CORPUS_NAMES, Corpus, corpus
from dgmodcat.instances.golden import compute_flags, load_golden, write_golden
from dgmodcat.instances.random_modules import random_cone_module, random_map
from dgmodcat.instances.suite import SuiteCheck, SuiteReport, freeze, run_theorem_suite
