#include <vector>

#include "adtarget/scenarios.hpp"

namespace adtarget {

namespace {

// Columns as printed: w1, alpha1, alpha2, G, A*, Q*, P w/o TM, A1, A2, Q1, Q2, P TM, % change.
std::vector<TableRow> columns(std::initializer_list<std::array<double, kTableRowCount>> cols) {
    std::vector<TableRow> out;
    for (const auto& c : cols) out.push_back(TableRow::from_values(c));
    return out;
}

}  // namespace

const std::vector<TableRow>& published_table(TableId id) {
    static const std::vector<TableRow> t1 = columns({
        {0.500, 0.400, 0.040, 0.220, 4.060, 42.080, 10.152, 6.130, 0.140, 45.922, 0.773, 9.907, -2.4},
        {0.250, 0.400, 0.040, 0.130, 4.060, 24.866, 11.643, 10.920, 0.300, 29.402, 1.682, 10.778, -7.4},
        {0.100, 0.400, 0.040, 0.076, 4.060, 14.537, 14.232, 21.580, 0.740, 15.481, 3.119, 12.496, -12.2},
        {0.050, 0.400, 0.040, 0.058, 4.060, 11.094, 16.166, 32.720, 1.330, 9.053, 4.348, 14.200, -12.2},
    });
    static const std::vector<TableRow> t2 = columns({
        {0.500, 0.400, 0.040, 0.220, 4.060, 42.080, 10.152, 6.130, 0.140, 45.922, 0.773, 9.907, -2.4},
        {0.500, 0.380, 0.060, 0.220, 4.060, 42.080, 10.152, 6.000, 0.340, 43.219, 1.788, 9.981, -1.7},
        {0.500, 0.340, 0.100, 0.220, 4.060, 42.080, 10.152, 5.580, 1.000, 37.456, 5.000, 10.116, -0.4},
        {0.500, 0.280, 0.160, 0.220, 4.060, 42.080, 10.152, 4.490, 2.560, 28.012, 12.411, 10.247, 0.9},
    });
    static const std::vector<TableRow> t3 = columns({
        {0.500, 0.400, 0.040, 0.220, 7.570, 55.363, 11.173, 11.240, 0.310, 59.517, 1.139, 10.832, -3.1},
        {0.250, 0.400, 0.040, 0.130, 7.570, 32.715, 13.370, 19.560, 0.650, 37.248, 2.443, 12.182, -8.9},
        {0.100, 0.400, 0.040, 0.076, 7.570, 19.125, 17.186, 37.060, 1.600, 18.938, 4.492, 14.859, -13.5},
        {0.050, 0.400, 0.040, 0.058, 7.570, 14.596, 20.037, 40.000, 2.840, 9.728, 6.182, 17.552, -12.4},
    });
    static const std::vector<TableRow> t4 = columns({
        {0.500, 0.400, 0.040, 0.220, 3.380, 74.033, 9.131, 4.930, 0.170, 78.142, 1.758, 9.021, -1.2},
        {0.250, 0.400, 0.040, 0.130, 3.390, 43.799, 9.915, 8.300, 0.350, 47.422, 3.710, 9.536, -3.8},
        {0.100, 0.400, 0.040, 0.076, 3.390, 25.605, 11.276, 14.910, 0.860, 23.101, 6.729, 10.560, -6.3},
        {0.050, 0.400, 0.040, 0.058, 3.390, 19.541, 12.293, 20.790, 1.450, 12.770, 8.954, 11.533, -6.2},
    });
    switch (id) {
        case TableId::T1: return t1;
        case TableId::T2: return t2;
        case TableId::T3: return t3;
        case TableId::T4: return t4;
    }
    return t1;
}

}  // namespace adtarget
