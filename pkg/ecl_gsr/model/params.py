"""Encoder and projector parameters."""

from dataclasses import dataclass

import numpy as np

from ecl_gsr.autodiff.params import ParamStore, glorot


@dataclass
class EclParams:
    """Three bias-free GCN layers followed by a two-layer affine projector."""

    store: ParamStore
    input_dim: int
    encoder_dim: int
    projector_dim: int

    @classmethod
    def init(cls, input_dim, encoder_dim=128, projector_dim=128, seed=0):
        rng = np.random.default_rng(seed)
        store = ParamStore()
        store.create("encoder.w1", glorot(rng, input_dim, encoder_dim))
        store.create("encoder.w2", glorot(rng, encoder_dim, encoder_dim))
        store.create("encoder.w3", glorot(rng, encoder_dim, encoder_dim))
        store.create("projector.w1", glorot(rng, encoder_dim, projector_dim))
        store.create("projector.b1", np.zeros((1, projector_dim)))
        store.create("projector.w2", glorot(rng, projector_dim, projector_dim))
        store.create("projector.b2", np.zeros((1, projector_dim)))
        return cls(
            store=store,
            input_dim=input_dim,
            encoder_dim=encoder_dim,
            projector_dim=projector_dim,
        )

    @property
    def encoder_weights(self):
        return [self.store[f"encoder.w{i}"] for i in (1, 2, 3)]

    @property
    def projector_layers(self):
        s = self.store
        return [(s["projector.w1"], s["projector.b1"]), (s["projector.w2"], s["projector.b2"])]
