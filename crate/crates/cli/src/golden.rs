//! Stored values for the four-vertex example `C = abcdbacd`. Columns are
//! `φ(a..d) | χ(a..d) | ψ(a..d)`, rows `a..d`.

pub const WORD: &str = "abcdbacd";
pub const KAPPA_VERTEX: &str = "d";

pub struct BaseCase {
    pub base: &'static str,
    pub c: [[i64; 12]; 4],
    pub c_tilde_word: &'static str,
    pub c_tilde: [[i64; 12]; 4],
    /// Columns negated after the row operations.
    pub flipped: usize,
    pub triples: [[&'static str; 3]; 12],
}

pub const AD: BaseCase = BaseCase {
    base: "ad",
    c: [
        [1, 0, 0, 0, 0, 0, -1, -1, 1, 2, 1, 1],
        [0, 1, 0, 0, 0, 0, -1, -1, 0, 1, 1, 1],
        [0, 0, 1, 0, 1, 1, 0, -1, 1, 1, 1, 1],
        [0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1],
    ],
    c_tilde_word: "abcdcabd",
    c_tilde: [
        [1, 0, 0, 0, 0, -1, 0, -1, 1, 1, 2, 1],
        [0, 1, 0, 0, 1, 0, 0, -1, 1, 1, 2, 1],
        [0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1],
    ],
    flipped: 8,
    triples: [
        ["phi(a)", "chi(a)", "psi(a)"],
        ["phi(a)", "chi(b)", "psi(a)"],
        ["phi(d)", "chi(d)", "psi(c)"],
        ["phi(d)", "chi(d)", "psi(d)"],
        ["phi(a)", "psi(b)", "psi(c)"],
        ["phi(a)", "psi(b)", "psi(d)"],
        ["phi(b)", "psi(a)", "psi(c)"],
        ["phi(b)", "psi(a)", "psi(d)"],
        ["phi(c)", "phi(d)", "chi(a)"],
        ["phi(c)", "phi(d)", "chi(b)"],
        ["chi(a)", "chi(c)", "chi(d)"],
        ["chi(b)", "chi(c)", "chi(d)"],
    ],
};

pub const CD: BaseCase = BaseCase {
    base: "cd",
    c: [
        [1, 0, 0, 0, 0, 0, -1, 1, 1, 2, 1, 1],
        [0, 1, 0, 0, 0, 0, -1, 1, 0, 1, 1, 1],
        [0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1],
        [0, 0, 0, 1, -1, -1, -1, 0, 1, 1, 1, 1],
    ],
    c_tilde_word: "dbacdcba",
    c_tilde: [
        [1, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0, 1],
        [0, 1, 0, 0, -1, 0, 0, 1, 1, 1, 0, 1],
        [0, 0, 1, 0, 0, 0, 0, 1, 2, 2, 1, 1],
        [0, 0, 0, 1, -1, -1, -1, 0, 1, 1, 1, 1],
    ],
    flipped: 2,
    triples: [
        ["phi(a)", "psi(b)", "psi(c)"],
        ["phi(a)", "psi(b)", "psi(d)"],
        ["phi(b)", "psi(a)", "psi(c)"],
        ["phi(b)", "psi(a)", "psi(d)"],
        ["phi(c)", "phi(d)", "chi(a)"],
        ["phi(c)", "phi(d)", "chi(b)"],
        ["phi(c)", "chi(c)", "psi(c)"],
        ["phi(c)", "chi(c)", "psi(d)"],
        ["phi(d)", "chi(d)", "psi(c)"],
        ["phi(d)", "chi(d)", "psi(d)"],
        ["chi(a)", "chi(c)", "chi(d)"],
        ["chi(b)", "chi(c)", "chi(d)"],
    ],
};

/// Elements in exactly three 3-circuits for base `ad`.
pub const AD_TRIPLE_ELEMENTS: [&str; 4] = ["chi(a)", "chi(b)", "psi(c)", "psi(d)"];
