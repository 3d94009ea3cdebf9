//! Built-in groups, stored as instance text.

use crate::instance::InstanceFile;
use crate::{Error, Result};

pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "cyc9",
        summary: "cyclic group of order 9",
        source: "name cyc9\nprime 3\ngens a a3\npower a = a3\n",
    },
    CatalogEntry {
        name: "ab_9_3",
        summary: "C9 x C3",
        source: "name ab_9_3\nprime 3\ngens a a3 b\npower a = a3\n",
    },
    CatalogEntry {
        name: "heis3",
        summary: "Heisenberg group mod 3, order 27, exponent 3",
        source: "name heis3\nprime 3\ngens a b c\ncomm b a = c\n",
    },
    CatalogEntry {
        name: "mc9",
        summary: "<a, b | a^9, b^9, a^b = a^4>, order 81, powerful, class 2",
        source: "name mc9\nprime 3\ngens a b a3 b3\npower a = a3\npower b = b3\ncomm b a = a3^2\n",
    },
    CatalogEntry {
        name: "m16",
        summary: "<a, b | a^8, b^2, a^b = a^5>, order 16, powerful",
        source: "name m16\nprime 2\ngens a b a2 a4\npower a = a2\npower a2 = a4\ncomm b a = a4\n",
    },
    CatalogEntry {
        name: "c3wrc3",
        summary: "C3 wr C3, order 81, class 3, not powerful",
        source: "name c3wrc3\nprime 3\ngens s v1 v2 v3\ncomm v1 s = v2\ncomm v2 s = v3\n",
    },
    CatalogEntry {
        name: "mc27",
        summary: "<a, b | a^27, b^9, a^b = a^4>, order 243, powerful, class 3",
        source: "name mc27\nprime 3\ngens a b a3 b3 a9\npower a = a3\npower b = b3\npower a3 = a9\n\
                 comm b a = a3^2 a9^2\ncomm a3 b = a9\ncomm b3 a = a9^2\n",
    },
    CatalogEntry {
        name: "heis3x2",
        summary: "heis3 x heis3, order 729",
        source: "name heis3x2\nprime 3\ngens a1 b1 c1 a2 b2 c2\ncomm b1 a1 = c1\ncomm b2 a2 = c2\n",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

pub fn load(name: &str) -> Result<InstanceFile> {
    let e = entry(name).ok_or_else(|| Error::Precondition(format!("no catalog group '{name}'")))?;
    InstanceFile::parse(e.source)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let expect = [
            ("cyc9", 9),
            ("ab_9_3", 27),
            ("heis3", 27),
            ("mc9", 81),
            ("m16", 16),
            ("c3wrc3", 81),
            ("mc27", 243),
            ("heis3x2", 729),
        ];
        for (n, o) in expect {
            let g = load(n).unwrap().group().unwrap();
            assert_eq!(g.order_u64(), Some(o), "{n}");
        }
    }
}
