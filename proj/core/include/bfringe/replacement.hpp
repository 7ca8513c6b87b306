#ifndef BFRINGE_REPLACEMENT_HPP
#define BFRINGE_REPLACEMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bfringe {

using CompositionVector = std::vector<std::int64_t>;

/// The two insertion algorithms. The optimistic one splits a saturated
/// fringe node after locating the insertion gap; the prudent one splits
/// saturated nodes on the way down.
enum class Algorithm { optimistic, prudent };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

/// Replacement structure shared by the tree simulator and the urn chains.
///
/// `rows` is the gap-process replacement matrix (dimension m for
/// optimistic, m+1 for prudent), `increments` are the fringe-node
/// increment vectors w_k, and `gap_diag` holds the per-type gap counts
/// m+k-1, so that row k equals gap_diag * w_k. Immutable after
/// construction; safe to share across threads.
struct ReplacementRule {
    int m = 0;
    Algorithm algorithm = Algorithm::optimistic;
    int dim = 0;
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<std::vector<std::int64_t>> increments;
    std::vector<std::int64_t> gap_diag;
    std::int64_t balance = 0;
};

/// Builds the rule for a given m >= 2. Throws std::invalid_argument for
/// m < 2. The returned rule satisfies all structural invariants (checked).
ReplacementRule make_rule(int m, Algorithm algorithm);

/// Structural invariants: balanced rows (common sum 1), rows = gap_diag*w_k,
/// sign pattern, and the column divisibility needed for tenability.
/// Throws std::logic_error naming the first violated invariant.
void validate_rule(const ReplacementRule& rule);

/// True iff the urn started at `initial` (gap coordinates) is tenable,
/// i.e. |a_kk| divides the k-th entry for every color k. Throws
/// std::invalid_argument on dimension mismatch or the all-zero vector.
bool check_tenable(const ReplacementRule& rule, const CompositionVector& initial);

} // namespace bfringe

#endif
