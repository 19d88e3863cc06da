use std::io::{Read, Write};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::corpus::Dated;
use crate::geo::StateCode;
use crate::scalar::to_f64;
use crate::{Coalition, Party, Scalar};

/// One scored (tweet, party) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AllegianceRecord<T> {
    pub tweet_id: String,
    pub user_id: String,
    /// Resolved Mexican state; `Some` iff the tweet carries geodata.
    pub region: Option<StateCode>,
    pub country: Option<String>,
    pub party: Party,
    pub allegiance: T,
    pub date: DateTime<Utc>,
    pub coalition: Coalition,
}

impl<T: Scalar> AllegianceRecord<T> {
    /// Validating constructor: allegiance in `[0, 1]`, coalition derived from
    /// the party.
    pub fn new(
        tweet_id: impl Into<String>,
        user_id: impl Into<String>,
        party: Party,
        allegiance: T,
        date: DateTime<Utc>,
        region: Option<StateCode>,
    ) -> Result<Self, ModelError> {
        let r = Self {
            tweet_id: tweet_id.into(),
            user_id: user_id.into(),
            region,
            country: region.map(|_| "MX".to_string()),
            party,
            allegiance,
            date,
            coalition: party.coalition(),
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |reason: String| ModelError::InvalidRecord { tweet_id: self.tweet_id.clone(), reason };
        if !(T::zero() <= self.allegiance && self.allegiance <= T::one()) {
            return Err(bad(format!("allegiance {:?} outside [0, 1]", self.allegiance)));
        }
        if self.coalition != self.party.coalition() {
            return Err(bad(format!("coalition {:?} inconsistent with party {}", self.coalition, self.party)));
        }
        Ok(())
    }

    pub fn has_geodata(&self) -> bool {
        self.region.is_some()
    }

    /// Same record with the allegiance mapped into another scalar type.
    pub fn map_allegiance<U>(&self, f: impl FnOnce(&T) -> U) -> AllegianceRecord<U> {
        AllegianceRecord {
            tweet_id: self.tweet_id.clone(),
            user_id: self.user_id.clone(),
            region: self.region,
            country: self.country.clone(),
            party: self.party,
            allegiance: f(&self.allegiance),
            date: self.date,
            coalition: self.coalition,
        }
    }
}

impl<T> Dated for AllegianceRecord<T> {
    fn date(&self) -> DateTime<Utc> {
        self.date
    }
}

#[derive(Serialize, Deserialize)]
struct Row {
    tweet_id: String,
    user_id: String,
    region: Option<StateCode>,
    country: Option<String>,
    party: Party,
    allegiance: f64,
    date: String,
    coalition: Coalition,
}

/// Writes the columnar table
/// `tweet_id,user_id,region,country,party,allegiance,date,coalition`.
pub fn write_records_csv<T: Scalar, W: Write>(out: W, records: &[AllegianceRecord<T>]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(Row {
            tweet_id: r.tweet_id.clone(),
            user_id: r.user_id.clone(),
            region: r.region,
            country: r.country.clone(),
            party: r.party,
            allegiance: to_f64(&r.allegiance),
            date: crate::corpus::ingest_date::format(&r.date),
            coalition: r.coalition,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads and validates a scored-record table. Extra columns are ignored.
pub fn read_records_csv<R: Read>(input: R) -> Result<Vec<AllegianceRecord<f64>>, ModelError> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let row = row.map_err(|e| ModelError::Table(format!("row {}: {e}", i + 1)))?;
        let date = crate::corpus::ingest_date::parse(&row.date).map_err(|e| ModelError::Table(format!("row {}: {e}", i + 1)))?;
        let r = AllegianceRecord {
            tweet_id: row.tweet_id,
            user_id: row.user_id,
            region: row.region,
            country: row.country,
            party: row.party,
            allegiance: row.allegiance,
            date,
            coalition: row.coalition,
        };
        r.validate()?;
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    #[test]
    fn validation() {
        let d = Utc.with_ymd_and_hms(2021, 5, 2, 12, 0, 0).unwrap();
        assert!(AllegianceRecord::new("1", "u", Party::Pan, 1.2, d, None).is_err());
        assert!(AllegianceRecord::new("1", "u", Party::Pan, -0.1, d, None).is_err());
        let mut r = AllegianceRecord::new("1", "u", Party::Pan, 0.3, d, None).unwrap();
        assert_eq!(r.coalition, Coalition::Opposition);
        r.coalition = Coalition::Ruling;
        assert!(r.validate().is_err());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let d = Utc.with_ymd_and_hms(2021, 5, 2, 12, 0, 0).unwrap();
        let recs = vec![
            AllegianceRecord::new("1", "u", Party::Morena, 0.1 + 0.2, d, Some(StateCode::Jalisco)).unwrap(),
            AllegianceRecord::new("2", "v", Party::Fxm, 1.0 / 3.0, d, None).unwrap(),
        ];
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("tweet_id,user_id,region,country,party,allegiance,date,coalition\n"));
        assert!(text.contains("1,u,JC,MX,MORENA,0.30000000000000004,2021-05-02T12:00:00Z,0"));
        assert_eq!(read_records_csv(buf.as_slice()).unwrap(), recs);
    }

    #[test]
    fn rejects_inconsistent_rows() {
        let csv = "tweet_id,user_id,region,country,party,allegiance,date,coalition\n1,u,,,PAN,0.5,2021-05-02T12:00:00Z,0\n";
        assert!(read_records_csv(csv.as_bytes()).is_err());
    }
}
