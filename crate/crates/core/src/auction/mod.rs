//! Auctions built from the relation toolkit.

pub mod combinatorial;
pub mod single;

pub use combinatorial::{
    clear_vickrey, possible_allocations, welfare, AllocationRel, CombinatorialInstance, Outcome,
};
pub use single::{
    dom4_check, genvick_check, reducedbid, reducedprice, second_price_single_good,
    SingleGoodMechanism,
};
