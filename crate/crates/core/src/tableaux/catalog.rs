//! Conventional numbering of the independent Young tableaux for small shapes,
//! as row-major rank strings.

/// Sorted two-qubit table.
pub const T4_SORTED: &str = "1234";
/// The two non-Young two-qubit class representatives.
pub const T4_ONE: &str = "2134";
pub const T4_TWO: &str = "3124";

pub const T6: [&str; 5] = ["123456", "124356", "125346", "135246", "134256"];

/// Largest classical-MI arrangement for 2×3 (not a Young tableau).
pub const T6_MAX_CLASSICAL: &str = "145632";

pub const T9: [&str; 21] = [
    "123456789",
    "123457689",
    "123458679",
    "123467589",
    "123468579",
    "124356789",
    "125346789",
    "124357689",
    "124358679",
    "125347689",
    "125348679",
    "126348579",
    "126347589",
    "127348569",
    "124367589",
    "124368579",
    "126358479",
    "126357489",
    "127358469",
    "125368479",
    "125367489",
];

pub(crate) fn for_shape(rows: usize, cols: usize) -> Option<&'static [&'static str]> {
    match (rows, cols) {
        (2, 2) => Some(&[T4_SORTED]),
        (2, 3) => Some(&T6),
        (3, 3) => Some(&T9),
        _ => None,
    }
}
