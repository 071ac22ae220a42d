"""Statistical detection of voting biases in Eurovision Song Contest scores.

Monte Carlo samples from unbiased null models of the contest's three voting
scheme families (1957-2017) yield per-pair significance thresholds; observed
score averages exceeding them form one-way and collusive edge networks.
"""

__version__ = "0.1.0"
