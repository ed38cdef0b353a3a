//! Loop catalogs: file format, enumeration of right Bol loops, and reports.

mod analysis;
mod enumerate;
mod format;

pub use analysis::{
    analyze, census, check_population, nu_histogram, nu_set, nu_value, records_to_tsv, CatalogRecord, Census,
    TSV_HEADER,
};
pub use enumerate::{
    enumerate, enumerate_right_bol, Enumeration, EnumerationOptions, ValueOrder, DEFAULT_NODE_BUDGET, MAX_ORDER,
};
pub use format::{read_loops, read_loops_from_str, write_loops, write_loops_to_string};
