//! Named-variable surface syntax for assembling object terms, compiled down
//! to de Bruijn indices. Spares the intricate builders (interpreters,
//! iterators, mutually recursive systems) from hand-counting indices.

use crate::objlang::Term;

/// A builder expression: the term language with names instead of indices,
/// plus verbatim embedding of finished terms.
#[derive(Clone)]
pub enum N {
    /// A named variable reference.
    V(&'static str),
    /// A binder introducing a name for its body.
    Lam(&'static str, Box<N>),
    /// Application.
    App(Box<N>, Box<N>),
    /// Pairing.
    Pair(Box<N>, Box<N>),
    /// First projection.
    Fst(Box<N>),
    /// Second projection.
    Snd(Box<N>),
    /// Partial evaluation node.
    Pev(Box<N>, Box<N>),
    /// Syntactic equality test.
    Eq(Box<N>, Box<N>),
    /// Term-order comparison.
    Le(Box<N>, Box<N>),
    /// A finished closed term spliced in verbatim.
    Emb(Term),
}

/// Reference to a name bound by an enclosing [`lam`].
pub fn v(name: &'static str) -> N {
    N::V(name)
}
/// Abstraction binding `name` in `body`.
pub fn lam(name: &'static str, body: N) -> N {
    N::Lam(name, Box::new(body))
}
/// Application of `f` to `a`.
pub fn app(f: N, a: N) -> N {
    N::App(Box::new(f), Box::new(a))
}
/// Pair of `l` and `r`.
pub fn pair(l: N, r: N) -> N {
    N::Pair(Box::new(l), Box::new(r))
}
/// First projection.
pub fn fst(x: N) -> N {
    N::Fst(Box::new(x))
}
/// Second projection.
pub fn snd(x: N) -> N {
    N::Snd(Box::new(x))
}
/// Partial evaluation of program `p` on known input `x`.
pub fn pev(p: N, x: N) -> N {
    N::Pev(Box::new(p), Box::new(x))
}
/// Syntactic equality test.
pub fn eq(a: N, b: N) -> N {
    N::Eq(Box::new(a), Box::new(b))
}
/// Term-order comparison.
pub fn le(a: N, b: N) -> N {
    N::Le(Box::new(a), Box::new(b))
}
/// Splice a finished closed term in verbatim.
pub fn emb(t: Term) -> N {
    debug_assert!(t.is_closed(), "embedded terms must be closed");
    N::Emb(t)
}

/// Call-by-value let: binds `name` to the value of `expr` inside `body`.
pub fn let_(name: &'static str, expr: N, body: N) -> N {
    app(lam(name, body), expr)
}

/// Compile to a de Bruijn term. Panics on names not bound by an enclosing
/// `lam`; builders only ever compile closed terms.
pub fn compile(n: &N) -> Term {
    fn go(n: &N, stack: &mut Vec<&'static str>) -> Term {
        use crate::objlang::build as b;
        match n {
            N::V(name) => {
                let idx = stack
                    .iter()
                    .rev()
                    .position(|s| s == name)
                    .unwrap_or_else(|| panic!("unbound variable `{name}` in builder"));
                b::var(idx)
            }
            N::Lam(name, body) => {
                stack.push(name);
                let t = go(body, stack);
                stack.pop();
                b::lam(t)
            }
            N::App(f, a) => b::app(go(f, stack), go(a, stack)),
            N::Pair(l, r) => b::pair(go(l, stack), go(r, stack)),
            N::Fst(x) => b::fst(go(x, stack)),
            N::Snd(x) => b::snd(go(x, stack)),
            N::Pev(p, x) => b::pev(go(p, stack), go(x, stack)),
            N::Eq(a, b2) => b::eq(go(a, stack), go(b2, stack)),
            N::Le(a, b2) => b::le(go(a, stack), go(b2, stack)),
            N::Emb(t) => t.clone(),
        }
    }
    go(n, &mut Vec::new())
}

/// Compile a closed builder expression straight to a program.
pub fn program(n: N) -> crate::objlang::Program {
    crate::objlang::closed(compile(&n))
}
