use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

macro_rules! states {
    ($($variant:ident => $code:literal, $name:literal, [$($alias:literal),*];)*) => {
        /// The 32 Mexican federal entities (31 states and Mexico City).
        ///
        /// Two-letter codes follow the CURP convention, except that Mexico City
        /// is `MX` (the State of Mexico is `MC`).
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(into = "String", try_from = "String")]
        pub enum StateCode { $($variant),* }

        impl StateCode {
            pub const ALL: [StateCode; 32] = [$(StateCode::$variant),*];

            pub fn code(self) -> &'static str {
                match self { $(StateCode::$variant => $code),* }
            }

            pub fn name(self) -> &'static str {
                match self { $(StateCode::$variant => $name),* }
            }

            fn aliases(self) -> &'static [&'static str] {
                match self { $(StateCode::$variant => &[$($alias),*]),* }
            }
        }
    };
}

states! {
    Aguascalientes => "AS", "Aguascalientes", [];
    BajaCalifornia => "BC", "Baja California", [];
    BajaCaliforniaSur => "BS", "Baja California Sur", [];
    Campeche => "CC", "Campeche", [];
    Coahuila => "CL", "Coahuila", ["coahuila de zaragoza"];
    Colima => "CM", "Colima", [];
    Chiapas => "CS", "Chiapas", [];
    Chihuahua => "CH", "Chihuahua", [];
    MexicoCity => "MX", "Ciudad de México", ["ciudad de mexico", "cdmx", "mexico city", "distrito federal", "df"];
    Durango => "DG", "Durango", [];
    Guanajuato => "GT", "Guanajuato", [];
    Guerrero => "GR", "Guerrero", [];
    Hidalgo => "HG", "Hidalgo", [];
    Jalisco => "JC", "Jalisco", [];
    StateOfMexico => "MC", "México", ["estado de méxico", "estado de mexico", "edomex", "state of mexico"];
    Michoacan => "MN", "Michoacán", ["michoacan", "michoacán de ocampo", "michoacan de ocampo"];
    Morelos => "MS", "Morelos", [];
    Nayarit => "NT", "Nayarit", [];
    NuevoLeon => "NL", "Nuevo León", ["nuevo leon"];
    Oaxaca => "OC", "Oaxaca", [];
    Puebla => "PL", "Puebla", [];
    Queretaro => "QT", "Querétaro", ["queretaro", "querétaro de arteaga"];
    QuintanaRoo => "QR", "Quintana Roo", [];
    SanLuisPotosi => "SP", "San Luis Potosí", ["san luis potosi"];
    Sinaloa => "SL", "Sinaloa", [];
    Sonora => "SR", "Sonora", [];
    Tabasco => "TC", "Tabasco", [];
    Tamaulipas => "TS", "Tamaulipas", [];
    Tlaxcala => "TL", "Tlaxcala", [];
    Veracruz => "VZ", "Veracruz", ["veracruz de ignacio de la llave"];
    Yucatan => "YN", "Yucatán", ["yucatan"];
    Zacatecas => "ZS", "Zacatecas", [];
}

impl StateCode {
    /// Resolves a two-letter code or a state name/alias, case-insensitively.
    ///
    /// Free text such as `"Guadalajara, Jalisco"` is resolved from its
    /// comma-separated parts, last part first. Note that the bare word
    /// `México` resolves to the State of Mexico, never to the country.
    pub fn resolve(text: &str) -> Option<StateCode> {
        let t = text.trim();
        if t.is_empty() {
            return None;
        }
        if let Some(s) = Self::from_code(t) {
            return Some(s);
        }
        if let Some(s) = Self::from_name(t) {
            return Some(s);
        }
        if t.contains(',') {
            return t.rsplit(',').find_map(|part| {
                let p = part.trim();
                Self::from_name(p).or_else(|| Self::from_code(p))
            });
        }
        None
    }

    pub fn from_code(code: &str) -> Option<StateCode> {
        let c = code.trim();
        Self::ALL.into_iter().find(|s| s.code().eq_ignore_ascii_case(c))
    }

    fn from_name(name: &str) -> Option<StateCode> {
        let n = name.trim().to_lowercase();
        Self::ALL
            .into_iter()
            .find(|s| s.name().to_lowercase() == n || s.aliases().iter().any(|a| *a == n))
    }

    /// Members of the Greater Mexico City conurbation.
    pub fn is_greater_mexico_city(self) -> bool {
        matches!(self, StateCode::MexicoCity | StateCode::Hidalgo | StateCode::StateOfMexico)
    }
}

impl fmt::Display for StateCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for StateCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_code(s).ok_or_else(|| format!("unknown state code `{s}`"))
    }
}

impl From<StateCode> for String {
    fn from(s: StateCode) -> String {
        s.code().to_string()
    }
}

impl TryFrom<String> for StateCode {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// True when a country attribute denotes Mexico (or is absent).
pub fn is_mexico(country: Option<&str>) -> bool {
    match country.map(|c| c.trim().to_lowercase()) {
        None => true,
        Some(c) => c.is_empty() || c == "mx" || c == "mex" || c == "mexico" || c == "méxico",
    }
}
