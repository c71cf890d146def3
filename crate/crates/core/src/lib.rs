pub mod intlattice;
pub mod truncring;
pub mod kmodel;
pub mod chern;
pub mod expr;
pub mod filtration;
pub mod compute;
pub mod scenarios;
