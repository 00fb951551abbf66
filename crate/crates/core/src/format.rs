//! Reproducible text output: fixed float formatting and CSV tables.

/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders a CSV table with a header row.
pub fn csv_table<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
