//! Exact Ringel-Hall algebras of small quivers, BGP reflection functors, and
//! Lusztig's symmetries on the modified quantum group and modified Hall algebra.

pub mod coeffring;
pub mod lincomb;
pub mod cartan;
pub mod quiverrep;
pub mod hallalg;
pub mod bgp;
pub mod fquot;
pub mod udot;
pub mod hdot;
pub mod config;
pub mod verify;
pub mod cli;
