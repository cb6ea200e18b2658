"""xcboard: a shared brainstorming board with durable total ordering.

Modules:
  patterns    pattern catalog model, validation, relation queries
  stimulus    card decks, seeded draws, prompt builders, step wizards
  session     session state machine: joins, ordered ingestion, board ops
  clustering  tokenization, Jaccard similarity, greedy leader clustering
  protocol    canonical message encoding for the stream transport
  eventlog    append-only per-session logs and deterministic replay
  server      the network service (HTTP + streams)
  bench       concurrent-client load harness
  cli         operator entry point (serve / validate / bench / export)
  rng         reproducible random sampling primitives
"""

__version__ = "0.1.0"
