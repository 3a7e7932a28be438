#pragma once

#include <string>
#include <vector>

#include "augview/augmentation/scene.hpp"
#include "augview/session/state.hpp"

namespace augview::augmentation {

using session::SessionState;
using session::UserId;

// One function per technique; each returns the viewer's nodes of that kind with
// bounds and zones filled in, unordered. All throw Error(kUnknownUser).
std::vector<AugmentationNode> embedded_vis_nodes(const SessionState& state, const UserId& viewer,
                                                 std::vector<std::string>* warnings = nullptr);
std::vector<AugmentationNode> hinged_nodes(const SessionState& state, const UserId& viewer);
std::vector<AugmentationNode> curved_screen_nodes(const SessionState& state, const UserId& viewer);
std::vector<AugmentationNode> link_nodes(const SessionState& state, const UserId& viewer);
std::vector<AugmentationNode> extended_axis_nodes(const SessionState& state, const UserId& viewer);
std::vector<AugmentationNode> layer_nodes(const SessionState& state, const UserId& viewer);
std::vector<AugmentationNode> lens_nodes(const SessionState& state, const UserId& viewer);
std::vector<AugmentationNode> annotation_nodes(const SessionState& state, const UserId& viewer);

// All families in precedence order. With the curved screen active, nodes anchored
// outside the flat window follow the screen curvature.
ARScene compose_user_scene(const SessionState& state, const UserId& viewer);

// Rows an embedded visualization summarizes for a mark: every table row of the
// mark's group for bar and pie marks, the mark's own rows otherwise.
std::vector<vis::RowId> embed_rows(const session::Workspace& ws, const std::string& vis_id, std::uint32_t mark);
// Column split by an embedded visualization when the analyst chose none.
std::string default_embed_dimension(const session::Workspace& ws, const std::string& vis_id);

}  // namespace augview::augmentation
