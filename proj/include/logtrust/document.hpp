#pragma once

#include <logtrust/types.hpp>

#include <set>
#include <string>

namespace logtrust {

struct Comment {
    PeerId author;
    Clock clock;             // author-side clock of the comment action
    std::string comment_id;  // "<author>@<clock>", suffixed "#n" within a batch

    auto operator<=>(const Comment&) const = default;
};

/// Shared document. Content is immutable; only the comment set changes.
struct Document {
    std::string doc_id;
    PeerId creator;
    std::set<Comment> comments;

    bool operator==(const Document&) const = default;
};

std::string make_comment_id(const PeerId& author, Clock clock, unsigned seq = 0);

}  // namespace logtrust
