//! Measurement harnesses: price of temporal fairness, competitive ratios,
//! price of equitability and the proportionality example.

mod families;
mod measure;

pub use families::{gen_family, random_split_instance, Family, FamilyInstance, SplitSequence};
pub use measure::{
    measure_cr, measure_family_potf, measure_poe, measure_potf, potf_sweep,
    prop_impossibility_check, ratio_of, OnlineChoice, PoeReport, PropReport, RatioReport, Rational,
    SampleStats, SweepCase, SweepReport,
};
