"""dsx: a scalable, precise search engine for code changes.

Queries are written in an extension of the target language (placeholders
and wildcards); retrieval is feature-hashed vector search, and every
returned result is verified by exact tree matching.
"""

__version__ = "0.1.0"
