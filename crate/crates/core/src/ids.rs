//! Entity identifiers.
//!
//! Every entity in a story is named by a short text token. Each kind gets
//! its own newtype so an object id can never be passed where a container id
//! is expected.

use std::fmt;

use serde::{Deserialize, Serialize};

macro_rules! entity_id {
    ($(#[$doc:meta])* $name:ident, $kind:literal) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub const KIND: &'static str = $kind;

            pub fn new(token: impl Into<String>) -> Self {
                Self(token.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(token: &str) -> Self {
                Self(token.to_owned())
            }
        }
    };
}

entity_id!(
    /// A character in the story.
    AgentId,
    "agent"
);
entity_id!(RoomId, "room");
entity_id!(
    /// Something objects can be placed in; always sits in at most one room.
    ContainerId,
    "container"
);
entity_id!(ObjectId, "object");
entity_id!(AttributeId, "attribute");
