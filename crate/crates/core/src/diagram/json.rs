use serde::{Deserialize, Serialize};

use super::{Event, Over, SlicedDiagram};
use crate::error::{Result, SkeinError};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointDir {
    In,
    Out,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct EndpointsJson {
    #[serde(default)]
    pub bottom: Vec<EndpointDir>,
    #[serde(default)]
    pub top: Vec<EndpointDir>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<Over>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaps: Option<Vec<usize>>,
}

/// Wire format of a diagram. Orientation is given either as one sign per component
/// (`orientations`) or by endpoint directions plus signs for the closed components
/// (`endpoints` and `loops`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    #[serde(default)]
    pub bottom: usize,
    #[serde(default)]
    pub top: usize,
    pub events: Vec<EventJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<EndpointsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loops: Option<Vec<i8>>,
}

impl EventJson {
    fn to_event(&self, index: usize) -> Result<Event> {
        let pos = || {
            self.pos
                .ok_or_else(|| SkeinError::Parse(format!("events[{index}]: missing field `pos`")))
        };
        let reject = |field: &str, present: bool| {
            if present {
                Err(SkeinError::Parse(format!("events[{index}]: field `{field}` not allowed for {}", self.kind)))
            } else {
                Ok(())
            }
        };
        match self.kind.as_str() {
            "cup" | "cap" => {
                reject("over", self.over.is_some())?;
                reject("gaps", self.gaps.is_some())?;
                Ok(if self.kind == "cup" { Event::Cup(pos()?) } else { Event::Cap(pos()?) })
            }
            "cross" => {
                reject("gaps", self.gaps.is_some())?;
                let over = self
                    .over
                    .ok_or_else(|| SkeinError::Parse(format!("events[{index}]: missing field `over`")))?;
                Ok(Event::Cross(pos()?, over))
            }
            "punctures" => {
                reject("over", self.over.is_some())?;
                reject("pos", self.pos.is_some())?;
                let gaps = self
                    .gaps
                    .clone()
                    .ok_or_else(|| SkeinError::Parse(format!("events[{index}]: missing field `gaps`")))?;
                Ok(Event::Punctures(gaps))
            }
            other => Err(SkeinError::Parse(format!("events[{index}]: unknown kind {other:?}"))),
        }
    }

    fn from_event(ev: &Event) -> Self {
        let (kind, pos, over, gaps) = match ev {
            Event::Cup(i) => ("cup", Some(*i), None, None),
            Event::Cap(i) => ("cap", Some(*i), None, None),
            Event::Cross(i, o) => ("cross", Some(*i), Some(*o), None),
            Event::Punctures(g) => ("punctures", None, None, Some(g.clone())),
        };
        EventJson { kind: kind.into(), pos, over, gaps }
    }
}

impl DiagramJson {
    pub fn into_diagram(self) -> Result<SlicedDiagram> {
        let events = self
            .events
            .iter()
            .enumerate()
            .map(|(i, e)| e.to_event(i))
            .collect::<Result<Vec<_>>>()?;
        let d = SlicedDiagram::new(self.bottom, self.top, events)?;
        match (self.orientations, self.endpoints) {
            (Some(_), Some(_)) => Err(SkeinError::Parse(
                "give either `orientations` or `endpoints`, not both".into(),
            )),
            (Some(signs), None) => {
                if self.loops.is_some() {
                    return Err(SkeinError::Parse("`loops` goes with `endpoints`".into()));
                }
                d.with_orientation(signs)
            }
            (None, Some(ep)) => {
                let dir = |v: &[EndpointDir], at_bottom: bool| -> Vec<i8> {
                    v.iter()
                        .map(|e| match (e, at_bottom) {
                            (EndpointDir::In, true) | (EndpointDir::Out, false) => 1,
                            _ => -1,
                        })
                        .collect()
                };
                d.with_endpoint_orientation(&dir(&ep.bottom, true), &dir(&ep.top, false), self.loops.as_deref().unwrap_or(&[]))
            }
            (None, None) => match self.loops {
                Some(loops) => d.with_endpoint_orientation(&[], &[], &loops),
                None => Ok(d),
            },
        }
    }
}

impl From<&SlicedDiagram> for DiagramJson {
    fn from(d: &SlicedDiagram) -> Self {
        DiagramJson {
            bottom: d.bottom(),
            top: d.top(),
            events: d.events().iter().map(EventJson::from_event).collect(),
            orientations: d.orientation().map(<[i8]>::to_vec),
            endpoints: None,
            loops: None,
        }
    }
}

impl SlicedDiagram {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_str(s).map_err(|e| SkeinError::Parse(e.to_string()))?;
        raw.into_diagram()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson::from(self)).expect("diagram serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self)).expect("diagram serializes")
    }
}
