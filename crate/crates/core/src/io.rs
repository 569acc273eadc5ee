//! JSON encodings of points, maps, geometric objects and invariants.
//!
//! Rationals are strings `"p/q"` (or `"p"`); integers are JSON numbers when
//! they fit in `i64` and decimal strings otherwise. Inputs accept either form
//! for both.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::affine::{AffSpace, AffineInv};
use crate::angle::{AngleInv, OrientedAngle, OrientedTriangle, TriInv};
use crate::cone::{Cone, Fan};
use crate::conic::Conic;
use crate::ellipse::EllInv;
use crate::error::{Error, Result};
use crate::map::UniAffMap;
use crate::num::{format_rat, parse_int, parse_rat, Int, Rat};
use crate::point::RatPoint;
use crate::polyhedra::Polyhedron;
use crate::segment::{OrientedSegment, SideInv};
use crate::simplex::RatSimplex;

/// A number literal as found in input JSON.
#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            Num::Int(v) => Ok(Rat::from_integer(Int::from(*v))),
            Num::Text(s) => parse_rat(s),
        }
    }

    pub fn to_int(&self) -> Result<Int> {
        match self {
            Num::Int(v) => Ok(Int::from(*v)),
            Num::Text(s) => parse_int(s),
        }
    }
}

type PointDto = Vec<Num>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDto {
    pub points: Vec<PointDto>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDto {
    pub a: PointDto,
    pub b: PointDto,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleDto {
    pub v: PointDto,
    pub h: PointDto,
    pub k: PointDto,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleDto {
    pub u: PointDto,
    pub v: PointDto,
    pub w: PointDto,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConicDto {
    pub a: Num,
    pub b: Num,
    pub c: Num,
    pub d: Num,
    pub e: Num,
    pub f: Num,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronDto {
    pub simplexes: Vec<Vec<PointDto>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDto {
    pub generators: Vec<Vec<Num>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDto {
    pub matrix: Vec<Vec<Num>>,
    pub translation: Vec<Num>,
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn point(p: &PointDto) -> Result<RatPoint> {
    Ok(RatPoint::new(p.iter().map(Num::to_rat).collect::<Result<_>>()?))
}

fn points(ps: &[PointDto]) -> Result<Vec<RatPoint>> {
    let out: Vec<RatPoint> = ps.iter().map(point).collect::<Result<_>>()?;
    if let Some(first) = out.first() {
        for p in &out {
            p.check_dim(first.dim())?;
        }
    }
    Ok(out)
}

fn ints(v: &[Num]) -> Result<Vec<Int>> {
    v.iter().map(Num::to_int).collect()
}

pub fn parse_points(v: &Value) -> Result<Vec<RatPoint>> {
    let dto: AffineDto = from_value(v)?;
    if dto.points.is_empty() {
        return Err(Error::InvalidInput("no points".into()));
    }
    points(&dto.points)
}

pub fn parse_affine(v: &Value) -> Result<AffSpace> {
    crate::affine::affine_span(&parse_points(v)?)
}

pub fn parse_segment(v: &Value) -> Result<OrientedSegment> {
    let dto: SegmentDto = from_value(v)?;
    OrientedSegment::new(point(&dto.a)?, point(&dto.b)?)
}

pub fn parse_angle(v: &Value) -> Result<OrientedAngle> {
    let dto: AngleDto = from_value(v)?;
    let ps = points(&[dto.v, dto.h, dto.k])?;
    OrientedAngle::from_points(&ps[0], &ps[1], &ps[2])
}

pub fn parse_triangle(v: &Value) -> Result<OrientedTriangle> {
    let dto: TriangleDto = from_value(v)?;
    let ps = points(&[dto.u, dto.v, dto.w])?;
    let [u, v, w]: [RatPoint; 3] = ps.try_into().expect("three points");
    OrientedTriangle::new(u, v, w)
}

pub fn parse_conic(v: &Value) -> Result<Conic> {
    let d: ConicDto = from_value(v)?;
    Conic::new(d.a.to_rat()?, d.b.to_rat()?, d.c.to_rat()?, d.d.to_rat()?, d.e.to_rat()?, d.f.to_rat()?)
}

pub fn parse_polyhedron(v: &Value) -> Result<Polyhedron> {
    let dto: PolyhedronDto = from_value(v)?;
    let simplexes = dto
        .simplexes
        .iter()
        .map(|s| RatSimplex::new(points(s)?))
        .collect::<Result<Vec<_>>>()?;
    Polyhedron::new(simplexes)
}

pub fn parse_cone(v: &Value) -> Result<Cone> {
    let dto: ConeDto = from_value(v)?;
    Cone::new(dto.generators.iter().map(|g| ints(g)).collect::<Result<_>>()?)
}

pub fn parse_map(v: &Value) -> Result<UniAffMap> {
    let dto: MapDto = from_value(v)?;
    UniAffMap::new(
        dto.matrix.iter().map(|r| ints(r)).collect::<Result<_>>()?,
        ints(&dto.translation)?,
    )
}

pub fn int_json(v: &Int) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn rat_json(v: &Rat) -> Value {
    json!(format_rat(v))
}

pub fn point_json(p: &RatPoint) -> Value {
    Value::Array(p.coords().iter().map(rat_json).collect())
}

pub fn points_json(ps: &[RatPoint]) -> Value {
    Value::Array(ps.iter().map(point_json).collect())
}

pub fn map_json(g: &UniAffMap) -> Value {
    json!({
        "matrix": g.matrix().iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "translation": g.translation().iter().map(int_json).collect::<Vec<_>>(),
    })
}

pub fn equiv_json(g: Option<&UniAffMap>) -> Value {
    json!({
        "equivalent": g.is_some(),
        "map": g.map(map_json).unwrap_or(Value::Null),
    })
}

pub fn affine_inv_json(i: &AffineInv) -> Value {
    json!({ "dim": i.dim, "d": int_json(&i.d), "c": int_json(&i.c) })
}

pub fn side_inv_json(i: &SideInv) -> Value {
    json!({
        "c": int_json(&i.c),
        "lambda1": rat_json(&i.lambda1),
        "den_a": int_json(&i.den_a),
        "den_x1": int_json(&i.den_x1),
    })
}

pub fn angle_inv_json(i: &AngleInv) -> Value {
    json!({
        "den_v": int_json(&i.den_v),
        "den_qh": int_json(&i.den_qh),
        "den_phk": int_json(&i.den_phk),
        "bary": [rat_json(&i.bary.0), rat_json(&i.bary.1)],
        "c_plane": int_json(&i.c_plane),
    })
}

pub fn tri_inv_json(i: &TriInv) -> Value {
    json!({
        "side_vu": side_inv_json(&i.side_vu),
        "angle": angle_inv_json(&i.angle),
        "side_vw": side_inv_json(&i.side_vw),
    })
}

pub fn ell_inv_json(index: &Int, i: &EllInv) -> Value {
    json!({
        "index": int_json(index),
        "triangles": i.0.iter().map(tri_inv_json).collect::<Vec<_>>(),
    })
}

pub fn segment_json(s: &OrientedSegment) -> Value {
    json!({ "a": point_json(&s.a), "b": point_json(&s.b) })
}

pub fn angle_json(a: &OrientedAngle) -> Value {
    let v = a.vertex();
    let h = v.add_vec(&a.h.direction.iter().cloned().map(Rat::from_integer).collect::<Vec<_>>());
    let k = v.add_vec(&a.k.direction.iter().cloned().map(Rat::from_integer).collect::<Vec<_>>());
    json!({ "v": point_json(v), "h": point_json(&h), "k": point_json(&k) })
}

pub fn triangle_json(t: &OrientedTriangle) -> Value {
    json!({ "u": point_json(&t.u), "v": point_json(&t.v), "w": point_json(&t.w) })
}

pub fn conic_json(c: &Conic) -> Value {
    let mut m = Map::new();
    for (name, v) in ["a", "b", "c", "d", "e", "f"].into_iter().zip(c.coefficients()) {
        m.insert(name.into(), rat_json(v));
    }
    Value::Object(m)
}

pub fn polyhedron_json(p: &Polyhedron) -> Value {
    json!({
        "simplexes": p.simplexes().iter().map(|s| points_json(s.vertices())).collect::<Vec<_>>(),
    })
}

pub fn cone_json(c: &Cone) -> Value {
    json!({
        "generators": c.generators().iter().map(|g| g.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn fan_json(f: &Fan) -> Value {
    let rays = |v: &[Vec<Int>]| v.iter().map(|g| g.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>();
    json!({
        "rays": rays(&f.rays()),
        "cones": f.cones().iter().map(|c| rays(c.generators())).collect::<Vec<_>>(),
    })
}
