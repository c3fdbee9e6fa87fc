"""Contextual salience for word and sentence embeddings."""

from ._cosal import (
    ContextModel,
    ConvergenceError,
    CosalError,
    EmbeddingTable,
    MomentStats,
    ParseError,
    RemovalResult,
    SummaryResult,
    accumulate_stats,
    adjusted_cosine,
    adjusted_distance,
    best_linear_combination,
    confidence,
    cosal,
    detect_stopwords,
    embed_sentence,
    evaluate_task,
    load_model,
    load_stats,
    load_table,
    remove_component,
    save_model,
    save_stats,
    score_token,
    set_warning_handler,
    sigmoid_weight,
    spearman,
    split_sentences,
    summarize_document,
    summarize_sentence,
    tokenize,
    train_context,
    train_vectors,
)


def train_text(text, table, corpus, scheme="confidence", p=None):
    """Split raw text into sentences, tokenize, and train a context model."""
    sentences = [tokenize(s) for s in split_sentences(text)]
    return train_context([s for s in sentences if s], table, corpus, scheme=scheme, p=p)


__all__ = [name for name in dir() if not name.startswith("_")]
