#pragma once

#include <map>
#include <string>
#include <vector>

namespace unknot::fixtures {

// Bundled reproducible inputs. Knot identities were cross-checked against
// independent fingerprints (Fox coloring counts by brute force and the
// determinant |Delta(-1)| from a minor of the coloring matrix):
//   trefoil det 3, figure-eight det 5, 5_1 det 5, 5_2 det 7, 6_1 det 9.
// messy_unknot_4 is the figure-eight code with one crossing switched;
// det 1 and no 3-/5-colorings force it to be the unknot (the only knot
// types realizable with <= 4 crossings are 0_1, 3_1, 4_1).
inline const std::vector<std::pair<std::string, std::string>>& all() {
    static const std::vector<std::pair<std::string, std::string>> fx = {
        {"unknot_0", "PD[]"},
        {"unknot_1", "PD[X(1,1,2,2)]"},
        {"unknot_2", "PD[X(1,3,2,2),X(4,3,1,4)]"},
        {"messy_unknot_4", "PD[X(1,4,2,5),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"},
        {"trefoil", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"},
        {"trefoil_kinked", "PD[X(1,3,2,2),X(3,6,4,7),X(5,8,6,1),X(7,4,8,5)]"},
        {"figure_eight", "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"},
        {"knot_5_1", "PD[X(1,6,2,7),X(3,8,4,9),X(5,10,6,1),X(7,2,8,3),X(9,4,10,5)]"},
        {"knot_5_2", "PD[X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)]"},
        {"knot_6_1",
         "PD[X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)]"},
    };
    return fx;
}

inline std::string pd(const std::string& name) {
    for (const auto& [k, v] : all())
        if (k == name) return v;
    throw std::out_of_range("unknown fixture: " + name);
}

// Ground truth used by tests: true iff the fixture is a diagram of the unknot.
inline bool is_unknot(const std::string& name) {
    return name.rfind("unknot", 0) == 0 || name == "messy_unknot_4";
}

}  // namespace unknot::fixtures
