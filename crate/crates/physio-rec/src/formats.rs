//! JSON documents: weight matrices, sign priors, venue catalogs and user
//! preferences.

use std::collections::BTreeMap;

use physio_rec_core::recommend::duplicate_venue_id;
use physio_rec_core::{
    ActivityCategory, Condition, SignPrior, UserPreferences, Venue, WeightMatrix,
};
use serde::{Deserialize, Serialize};

use crate::error::{from_json, Error, Result};

/// Labelled 6×5 matrix as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc<T> {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub data: Vec<Vec<T>>,
}

impl<T: Copy> MatrixDoc<T> {
    fn from_rows(rows: &[[T; 5]; 6]) -> Self {
        MatrixDoc {
            rows: Condition::ALL.iter().map(|c| c.short().to_string()).collect(),
            cols: ActivityCategory::ALL
                .iter()
                .map(|c| c.short().to_string())
                .collect(),
            data: rows.iter().map(|r| r.to_vec()).collect(),
        }
    }

    fn to_rows(&self, context: &str) -> Result<[[T; 5]; 6]> {
        let want_rows: Vec<&str> = Condition::ALL.iter().map(|c| c.short()).collect();
        if self.rows != want_rows {
            return Err(Error::schema(
                context,
                "rows",
                format!("expected {want_rows:?}, got {:?}", self.rows),
            ));
        }
        let want_cols: Vec<&str> = ActivityCategory::ALL.iter().map(|c| c.short()).collect();
        if self.cols != want_cols {
            return Err(Error::schema(
                context,
                "cols",
                format!("expected {want_cols:?}, got {:?}", self.cols),
            ));
        }
        if self.data.len() != 6 {
            return Err(Error::schema(
                context,
                "data",
                format!("expected 6 rows, got {}", self.data.len()),
            ));
        }
        let mut out = Vec::with_capacity(6);
        for (i, row) in self.data.iter().enumerate() {
            let row: [T; 5] = row.as_slice().try_into().map_err(|_| {
                Error::schema(
                    context,
                    format!("data[{i}]"),
                    format!("expected 5 entries, got {}", row.len()),
                )
            })?;
            out.push(row);
        }
        Ok(out.try_into().unwrap_or_else(|_| unreachable!("six rows checked above")))
    }
}

impl MatrixDoc<f64> {
    pub fn from_weights(w: &WeightMatrix) -> Self {
        Self::from_rows(w.rows())
    }

    pub fn to_weights(&self, context: &str, w_max: f64) -> Result<WeightMatrix> {
        let rows = self.to_rows(context)?;
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() || v.abs() > w_max {
                    return Err(Error::schema(
                        context,
                        format!("data[{i}][{j}]"),
                        format!("{v} is not within [-{w_max}, {w_max}]"),
                    ));
                }
            }
        }
        Ok(WeightMatrix::new(rows)?)
    }
}

impl MatrixDoc<i64> {
    pub fn from_prior(p: &SignPrior) -> Self {
        Self::from_rows(&p.rows().map(|r| r.map(i64::from)))
    }

    pub fn to_prior(&self, context: &str) -> Result<SignPrior> {
        let rows = self.to_rows(context)?;
        let mut signs = [[0i8; 5]; 6];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                signs[i][j] = match v {
                    -1 => -1,
                    0 => 0,
                    1 => 1,
                    _ => {
                        return Err(Error::schema(
                            context,
                            format!("data[{i}][{j}]"),
                            format!("{v} is not one of -1, 0, 1"),
                        ))
                    }
                };
            }
        }
        Ok(SignPrior::new(signs)?)
    }
}

pub fn parse_weights(context: &str, text: &str, w_max: f64) -> Result<WeightMatrix> {
    from_json::<MatrixDoc<f64>>(context, text)?.to_weights(context, w_max)
}

pub fn weights_to_json(w: &WeightMatrix) -> String {
    let mut s = serde_json::to_string_pretty(&MatrixDoc::from_weights(w)).expect("matrix serializes");
    s.push('\n');
    s
}

pub fn parse_prior(context: &str, text: &str) -> Result<SignPrior> {
    from_json::<MatrixDoc<i64>>(context, text)?.to_prior(context)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VenueDoc {
    pub id: String,
    pub name: String,
    pub category: String,
    pub base_quality: f64,
}

pub fn parse_catalog(context: &str, text: &str) -> Result<Vec<Venue>> {
    let docs: Vec<VenueDoc> = from_json(context, text)?;
    let mut out = Vec::with_capacity(docs.len());
    for (i, d) in docs.into_iter().enumerate() {
        let category: ActivityCategory = d.category.parse().map_err(|_| {
            Error::schema(
                context,
                format!("[{i}].category"),
                format!("unknown category `{}`", d.category),
            )
        })?;
        let venue = Venue::new(d.id, d.name, category, d.base_quality)
            .map_err(|e| Error::schema(context, format!("[{i}].base_quality"), e))?;
        out.push(venue);
    }
    if let Some(id) = duplicate_venue_id(&out) {
        return Err(Error::schema(context, "id", format!("duplicate venue id `{id}`")));
    }
    Ok(out)
}

pub fn catalog_to_json(catalog: &[Venue]) -> String {
    let docs: Vec<VenueDoc> = catalog
        .iter()
        .map(|v| VenueDoc {
            id: v.id.clone(),
            name: v.name.clone(),
            category: v.category.as_str().to_string(),
            base_quality: v.base_quality,
        })
        .collect();
    serde_json::to_string_pretty(&docs).expect("catalog serializes")
}

pub fn parse_preferences(context: &str, text: &str) -> Result<UserPreferences> {
    let map: BTreeMap<String, f64> = from_json(context, text)?;
    let mut prefs = UserPreferences::new();
    for (id, affinity) in map {
        prefs
            .set(id.clone(), affinity)
            .map_err(|e| Error::schema(context, id, e))?;
    }
    Ok(prefs)
}
