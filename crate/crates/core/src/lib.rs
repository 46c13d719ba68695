//! Exact homology of Milnor fibers of hyperplane arrangements.
//!
//! The Milnor fiber of a central arrangement of `n` hyperplanes is an
//! `n`-fold cyclic cover of the projectivized complement, and more generally
//! every weight vector `m` on the hyperplanes defines an `N`-fold cover with
//! `N` the weight sum. This crate computes the first homology of those
//! covers exactly — Betti number and integer torsion — and exposes the
//! combinatorial machinery around that computation:
//!
//! - [`exact`]: arbitrary-precision rationals, cyclotomic and finite fields,
//!   exact linear algebra, Smith normal form;
//! - [`arrangement`]: central arrangements, intersection lattices, Möbius
//!   functions, characteristic polynomials, deletion, deconing, a catalog of
//!   named arrangements;
//! - [`multinet`]: verification and search for multinets, and detection of
//!   pointed multinets together with the primes they certify;
//! - [`fibration`]: wiring diagrams and braid-monodromy presentations of
//!   fundamental groups of complexified-real line arrangement complements,
//!   with Fox calculus on presentations;
//! - [`covers`]: integral and local-system homology of finite cyclic covers,
//!   the eigenspace decomposition of Milnor fiber homology, and the
//!   characteristic-jump torsion detector;
//! - [`matroidops`]: parallel connection and polarization of realized
//!   arrangements;
//! - [`json`] and [`cli`]: stable JSON schemas and the command-line driver.

pub mod arrangement;
pub mod cli;
pub mod covers;
pub mod exact;
pub mod fibration;
pub mod json;
pub mod matroidops;
pub mod multinet;
