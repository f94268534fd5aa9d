"""Voice cloning from noisy enrollment samples.

A desk-scale system built around a seq2seq acoustic model with a
gradient-reversal domain classifier: signal analysis and objective
metrics, a small reverse-mode autodiff engine, a synthetic toy speech
corpus with noise augmentation, few-shot speaker adaptation, one-shot
speaker encoding, and an evaluation CLI.
"""

__version__ = "0.1.0"
