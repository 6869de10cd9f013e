/**
 * Mirrors of the server's JSON views (docs/api.md). These are read-only
 * shapes: the client renders them and never derives game outcomes from them.
 */
export {};
