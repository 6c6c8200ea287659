#pragma once

#include <string>
#include <vector>

namespace gammadelta {

/// One graded piece of a filtration: the computed rank against the expected
/// rank, plus the generators that realize it.
struct GradedPiece {
    long index = 0;
    long rank = 0;
    long expected = 0;
    std::vector<std::string> generators;
    bool pass = false;
};

/// Outcome of a filtration or comparison-map verification.
struct FiltrationReport {
    std::string name;
    std::vector<GradedPiece> pieces;
    std::vector<std::vector<std::string>> matrix;  // only for comparison maps
    bool square = true;
    bool invertible = true;

    bool pass() const {
        for (const auto& piece : pieces)
            if (!piece.pass) return false;
        return square && invertible;
    }
};

/// Result of a rank count against a closed formula.
struct RankCheck {
    long rank = 0;
    long expected = 0;
    bool pass = false;
};

}  // namespace gammadelta
