#pragma once

#include "buml/metamodel/object_model.hpp"

namespace buml::flex {

struct InferenceResult {
    ClassModel model;
    Diagnostics diagnostics;  // warnings only: all-null, synthetic-general
};

/// Builds the narrowest class model that accepts `objects`.
///
/// Property types take the least upper bound of the observed kinds
/// (int < float < str, bool < str, enum < str, null is bottom). A property
/// is optional when some instance omits it or holds null. End multiplicities
/// are [min, max] partner counts, with max > 1 widened to `*`. When a link
/// end sees several classifiers, an abstract general is synthesized for
/// them (`synthetic-general`).
///
/// The round trip check_conformance(objects, result.model) is empty for
/// every object model with unique object ids, unique slots per object and
/// links between declared objects.
InferenceResult infer_class_model(const ObjectModel& objects);

struct EnforcementResult {
    ObjectModel pruned;
    Diagnostics removed;   // one entry per removed object, slot or link, tagged with the violated check
    Diagnostics residual;  // what check_conformance still reports (mult-lower only)
};

/// Removes non-conforming elements until nothing changes: duplicate,
/// unknown-class and abstract-class objects; duplicate, unknown and
/// ill-typed slots; objects lacking required slots; links with unknown
/// associations, missing objects or wrong end classes; then links beyond an
/// upper bound, keeping the earliest declared. Lower-bound violations are
/// left in place and reported as residuals.
EnforcementResult enforce_conformance(const ObjectModel& objects, const ClassModel& model);

}  // namespace buml::flex
