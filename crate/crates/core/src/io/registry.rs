use super::parse::{parse_text, Input, ParseError};
use crate::arrangement::Arrangement;

/// A named example with its data in one of the text formats.
#[derive(Debug, Clone, Copy)]
pub struct RegistryEntry {
    pub key: &'static str,
    pub kind: &'static str,
    pub description: &'static str,
    pub data: &'static str,
}

pub const REGISTRY: &[RegistryEntry] = &[
    RegistryEntry {
        key: "ex_2gen7_a",
        kind: "arrangement",
        description: "xyzw(x+y+z)(y+z+w)(x-y+z+w): 2-generic, rank 4",
        data: "arr 7 4
1 0 0 0
0 1 0 0
0 0 1 0
0 0 0 1
1 1 1 0
0 1 1 1
1 -1 1 1
",
    },
    RegistryEntry {
        key: "ex_2gen7_b",
        kind: "arrangement",
        description: "xyzw(x+y+z)(y+z+w)(x-y+z-w): 2-generic, rank 4",
        data: "arr 7 4
1 0 0 0
0 1 0 0
0 0 1 0
0 0 0 1
1 1 1 0
0 1 1 1
1 -1 1 -1
",
    },
    RegistryEntry {
        key: "ex_lived2",
        kind: "arrangement",
        description: "xyz(x-w)(y-w)(z-w)(x-u)(y-u): hypersolvable with singular range (3,5)",
        data: "arr 8 5
# coordinates x y z w u
1 0 0 0 0
0 1 0 0 0
0 0 1 0 0
1 0 0 -1 0
0 1 0 -1 0
0 0 1 -1 0
1 0 0 0 -1
0 1 0 0 -1
",
    },
    RegistryEntry {
        key: "ex_pres_A",
        kind: "arrangement",
        description: "xyz(x-z)(y-z)(2x-y-4z)(2x-y-5z)(x+5y+2z)(x+5y+z): generic rank-3 slice of ex_pres_B",
        data: "arr 9 3
1 0 0
0 1 0
0 0 1
1 0 -1
0 1 -1
2 -1 -4
2 -1 -5
1 5 2
1 5 1
",
    },
    RegistryEntry {
        key: "ex_pres_B",
        kind: "arrangement",
        description: "cone of vwxy(x-1)(y-1)(v-1)(w-1), hyperplane at infinity last: supersolvable",
        data: "aff 8 4
# coordinates v w x y, then the constant term
1 0 0 0 0
0 1 0 0 0
0 0 1 0 0
0 0 0 1 0
0 0 1 0 -1
0 0 0 1 -1
1 0 0 0 -1
0 1 0 0 -1
",
    },
    RegistryEntry {
        key: "nandi_d1",
        kind: "matroid",
        description: "rank-4 paving matroid of the first (10,15,6,4,2) block design",
        data: "blocks 10
abcd abef aceg adhi bchi bdgj cdfj afhj agij
behj bfgi ceij cfgh defi degh
",
    },
    RegistryEntry {
        key: "nandi_d2",
        kind: "matroid",
        description: "rank-4 paving matroid of the second (10,15,6,4,2) block design",
        data: "blocks 10
abcd abef aceg adhi bcij bdgh cdfj afhj agij
behj bfgi cehi cfgh defi degj
",
    },
    RegistryEntry {
        key: "nandi_d3",
        kind: "matroid",
        description: "rank-4 paving matroid of the third (10,15,6,4,2) block design",
        data: "blocks 10
abcd abef acgh adij bcij bdgh cdef aegi afhj
behj bfgi cehi cfgj degj dfhi
",
    },
];

pub fn registry_keys() -> Vec<String> {
    let mut keys: Vec<String> = REGISTRY.iter().map(|e| e.key.to_string()).collect();
    keys.push("boolean:<n>".to_string());
    keys
}

/// Look up a registered example or `boolean:<n>`.
pub fn lookup(key: &str) -> Result<Input, ParseError> {
    if let Some(n) = key.strip_prefix("boolean:") {
        let n: usize = n.parse().map_err(|_| ParseError::UnknownKey {
            key: key.to_string(),
            available: registry_keys().join(", "),
        })?;
        return Ok(Input::Arrangement(Arrangement::boolean(n)?));
    }
    match REGISTRY.iter().find(|e| e.key == key) {
        Some(e) => parse_text(e.data),
        None => Err(ParseError::UnknownKey { key: key.to_string(), available: registry_keys().join(", ") }),
    }
}

/// Registry key, or else a path to a file in one of the text formats.
pub fn parse_input(input: &str) -> Result<Input, ParseError> {
    if input.starts_with("boolean:") || REGISTRY.iter().any(|e| e.key == input) {
        return lookup(input);
    }
    match std::fs::read_to_string(input) {
        Ok(text) => parse_text(&text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            Err(ParseError::UnknownKey { key: input.to_string(), available: registry_keys().join(", ") })
        }
        Err(e) => Err(ParseError::Io { path: input.to_string(), message: e.to_string() }),
    }
}
