#pragma once

#include <cstdint>

// Prime factorizations of 2^w - 1 for every even w in [8, 128].
// Used to verify primitivity of candidate field generators; the
// product of prime powers is re-checked against 2^w - 1 at runtime.

namespace brc::detail {

struct PrimePower { uint64_t prime; uint32_t exp; };

inline constexpr PrimePower kGroupFactors[] = {
    {3ull, 1}, {5ull, 1}, {17ull, 1}, {3ull, 1}, {11ull, 1}, {31ull, 1}, {3ull, 2}, {5ull, 1},
    {7ull, 1}, {13ull, 1}, {3ull, 1}, {43ull, 1}, {127ull, 1}, {3ull, 1}, {5ull, 1}, {17ull, 1},
    {257ull, 1}, {3ull, 3}, {7ull, 1}, {19ull, 1}, {73ull, 1}, {3ull, 1}, {5ull, 2}, {11ull, 1},
    {31ull, 1}, {41ull, 1}, {3ull, 1}, {23ull, 1}, {89ull, 1}, {683ull, 1}, {3ull, 2}, {5ull, 1},
    {7ull, 1}, {13ull, 1}, {17ull, 1}, {241ull, 1}, {3ull, 1}, {2731ull, 1}, {8191ull, 1},
    {3ull, 1}, {5ull, 1}, {29ull, 1}, {43ull, 1}, {113ull, 1}, {127ull, 1}, {3ull, 2}, {7ull, 1},
    {11ull, 1}, {31ull, 1}, {151ull, 1}, {331ull, 1}, {3ull, 1}, {5ull, 1}, {17ull, 1}, {257ull, 1},
    {65537ull, 1}, {3ull, 1}, {43691ull, 1}, {131071ull, 1}, {3ull, 3}, {5ull, 1}, {7ull, 1},
    {13ull, 1}, {19ull, 1}, {37ull, 1}, {73ull, 1}, {109ull, 1}, {3ull, 1}, {174763ull, 1},
    {524287ull, 1}, {3ull, 1}, {5ull, 2}, {11ull, 1}, {17ull, 1}, {31ull, 1}, {41ull, 1},
    {61681ull, 1}, {3ull, 2}, {7ull, 2}, {43ull, 1}, {127ull, 1}, {337ull, 1}, {5419ull, 1},
    {3ull, 1}, {5ull, 1}, {23ull, 1}, {89ull, 1}, {397ull, 1}, {683ull, 1}, {2113ull, 1}, {3ull, 1},
    {47ull, 1}, {178481ull, 1}, {2796203ull, 1}, {3ull, 2}, {5ull, 1}, {7ull, 1}, {13ull, 1},
    {17ull, 1}, {97ull, 1}, {241ull, 1}, {257ull, 1}, {673ull, 1}, {3ull, 1}, {11ull, 1},
    {31ull, 1}, {251ull, 1}, {601ull, 1}, {1801ull, 1}, {4051ull, 1}, {3ull, 1}, {5ull, 1},
    {53ull, 1}, {157ull, 1}, {1613ull, 1}, {2731ull, 1}, {8191ull, 1}, {3ull, 4}, {7ull, 1},
    {19ull, 1}, {73ull, 1}, {87211ull, 1}, {262657ull, 1}, {3ull, 1}, {5ull, 1}, {17ull, 1},
    {29ull, 1}, {43ull, 1}, {113ull, 1}, {127ull, 1}, {15790321ull, 1}, {3ull, 1}, {59ull, 1},
    {233ull, 1}, {1103ull, 1}, {2089ull, 1}, {3033169ull, 1}, {3ull, 2}, {5ull, 2}, {7ull, 1},
    {11ull, 1}, {13ull, 1}, {31ull, 1}, {41ull, 1}, {61ull, 1}, {151ull, 1}, {331ull, 1},
    {1321ull, 1}, {3ull, 1}, {715827883ull, 1}, {2147483647ull, 1}, {3ull, 1}, {5ull, 1},
    {17ull, 1}, {257ull, 1}, {641ull, 1}, {65537ull, 1}, {6700417ull, 1}, {3ull, 2}, {7ull, 1},
    {23ull, 1}, {67ull, 1}, {89ull, 1}, {683ull, 1}, {20857ull, 1}, {599479ull, 1}, {3ull, 1},
    {5ull, 1}, {137ull, 1}, {953ull, 1}, {26317ull, 1}, {43691ull, 1}, {131071ull, 1}, {3ull, 1},
    {11ull, 1}, {31ull, 1}, {43ull, 1}, {71ull, 1}, {127ull, 1}, {281ull, 1}, {86171ull, 1},
    {122921ull, 1}, {3ull, 3}, {5ull, 1}, {7ull, 1}, {13ull, 1}, {17ull, 1}, {19ull, 1}, {37ull, 1},
    {73ull, 1}, {109ull, 1}, {241ull, 1}, {433ull, 1}, {38737ull, 1}, {3ull, 1}, {223ull, 1},
    {1777ull, 1}, {25781083ull, 1}, {616318177ull, 1}, {3ull, 1}, {5ull, 1}, {229ull, 1},
    {457ull, 1}, {174763ull, 1}, {524287ull, 1}, {525313ull, 1}, {3ull, 2}, {7ull, 1}, {79ull, 1},
    {2731ull, 1}, {8191ull, 1}, {121369ull, 1}, {22366891ull, 1}, {3ull, 1}, {5ull, 2}, {11ull, 1},
    {17ull, 1}, {31ull, 1}, {41ull, 1}, {257ull, 1}, {61681ull, 1}, {4278255361ull, 1}, {3ull, 1},
    {83ull, 1}, {13367ull, 1}, {164511353ull, 1}, {8831418697ull, 1}, {3ull, 2}, {5ull, 1},
    {7ull, 2}, {13ull, 1}, {29ull, 1}, {43ull, 1}, {113ull, 1}, {127ull, 1}, {337ull, 1},
    {1429ull, 1}, {5419ull, 1}, {14449ull, 1}, {3ull, 1}, {431ull, 1}, {9719ull, 1},
    {2099863ull, 1}, {2932031007403ull, 1}, {3ull, 1}, {5ull, 1}, {17ull, 1}, {23ull, 1},
    {89ull, 1}, {353ull, 1}, {397ull, 1}, {683ull, 1}, {2113ull, 1}, {2931542417ull, 1}, {3ull, 3},
    {7ull, 1}, {11ull, 1}, {19ull, 1}, {31ull, 1}, {73ull, 1}, {151ull, 1}, {331ull, 1},
    {631ull, 1}, {23311ull, 1}, {18837001ull, 1}, {3ull, 1}, {5ull, 1}, {47ull, 1}, {277ull, 1},
    {1013ull, 1}, {1657ull, 1}, {30269ull, 1}, {178481ull, 1}, {2796203ull, 1}, {3ull, 1},
    {283ull, 1}, {2351ull, 1}, {4513ull, 1}, {13264529ull, 1}, {165768537521ull, 1}, {3ull, 2},
    {5ull, 1}, {7ull, 1}, {13ull, 1}, {17ull, 1}, {97ull, 1}, {193ull, 1}, {241ull, 1}, {257ull, 1},
    {673ull, 1}, {65537ull, 1}, {22253377ull, 1}, {3ull, 1}, {43ull, 1}, {127ull, 1},
    {4363953127297ull, 1}, {4432676798593ull, 1}, {3ull, 1}, {5ull, 3}, {11ull, 1}, {31ull, 1},
    {41ull, 1}, {101ull, 1}, {251ull, 1}, {601ull, 1}, {1801ull, 1}, {4051ull, 1}, {8101ull, 1},
    {268501ull, 1}, {3ull, 2}, {7ull, 1}, {103ull, 1}, {307ull, 1}, {2143ull, 1}, {2857ull, 1},
    {6529ull, 1}, {11119ull, 1}, {43691ull, 1}, {131071ull, 1}, {3ull, 1}, {5ull, 1}, {17ull, 1},
    {53ull, 1}, {157ull, 1}, {1613ull, 1}, {2731ull, 1}, {8191ull, 1}, {858001ull, 1},
    {308761441ull, 1}, {3ull, 1}, {107ull, 1}, {6361ull, 1}, {69431ull, 1}, {20394401ull, 1},
    {28059810762433ull, 1}, {3ull, 4}, {5ull, 1}, {7ull, 1}, {13ull, 1}, {19ull, 1}, {37ull, 1},
    {73ull, 1}, {109ull, 1}, {87211ull, 1}, {246241ull, 1}, {262657ull, 1}, {279073ull, 1},
    {3ull, 1}, {11ull, 2}, {23ull, 1}, {31ull, 1}, {89ull, 1}, {683ull, 1}, {881ull, 1},
    {2971ull, 1}, {3191ull, 1}, {201961ull, 1}, {48912491ull, 1}, {3ull, 1}, {5ull, 1}, {17ull, 1},
    {29ull, 1}, {43ull, 1}, {113ull, 1}, {127ull, 1}, {257ull, 1}, {5153ull, 1}, {15790321ull, 1},
    {54410972897ull, 1}, {3ull, 2}, {7ull, 1}, {571ull, 1}, {32377ull, 1}, {174763ull, 1},
    {524287ull, 1}, {1212847ull, 1}, {160465489ull, 1}, {3ull, 1}, {5ull, 1}, {59ull, 1},
    {233ull, 1}, {1103ull, 1}, {2089ull, 1}, {3033169ull, 1}, {107367629ull, 1}, {536903681ull, 1},
    {3ull, 1}, {2833ull, 1}, {37171ull, 1}, {179951ull, 1}, {1824726041ull, 1},
    {3203431780337ull, 1}, {3ull, 2}, {5ull, 2}, {7ull, 1}, {11ull, 1}, {13ull, 1}, {17ull, 1},
    {31ull, 1}, {41ull, 1}, {61ull, 1}, {151ull, 1}, {241ull, 1}, {331ull, 1}, {1321ull, 1},
    {61681ull, 1}, {4562284561ull, 1}, {3ull, 1}, {768614336404564651ull, 1},
    {2305843009213693951ull, 1}, {3ull, 1}, {5ull, 1}, {5581ull, 1}, {8681ull, 1}, {49477ull, 1},
    {384773ull, 1}, {715827883ull, 1}, {2147483647ull, 1}, {3ull, 3}, {7ull, 2}, {19ull, 1},
    {43ull, 1}, {73ull, 1}, {127ull, 1}, {337ull, 1}, {5419ull, 1}, {92737ull, 1}, {649657ull, 1},
    {77158673929ull, 1}, {3ull, 1}, {5ull, 1}, {17ull, 1}, {257ull, 1}, {641ull, 1}, {65537ull, 1},
    {274177ull, 1}, {6700417ull, 1}, {67280421310721ull, 1},
};

// One row per even w: index into kGroupFactors plus count.
struct FactorRow { uint32_t w; uint32_t offset; uint32_t count; };

inline constexpr FactorRow kFactorRows[] = {
    {8, 0, 3}, {10, 3, 3}, {12, 6, 4}, {14, 10, 3}, {16, 13, 4}, {18, 17, 4}, {20, 21, 5},
    {22, 26, 4}, {24, 30, 6}, {26, 36, 3}, {28, 39, 6}, {30, 45, 6}, {32, 51, 5}, {34, 56, 3},
    {36, 59, 8}, {38, 67, 3}, {40, 70, 7}, {42, 77, 6}, {44, 83, 7}, {46, 90, 4}, {48, 94, 9},
    {50, 103, 7}, {52, 110, 7}, {54, 117, 6}, {56, 123, 8}, {58, 131, 6}, {60, 137, 11},
    {62, 148, 3}, {64, 151, 7}, {66, 158, 8}, {68, 166, 7}, {70, 173, 9}, {72, 182, 12},
    {74, 194, 5}, {76, 199, 7}, {78, 206, 7}, {80, 213, 9}, {82, 222, 5}, {84, 227, 12},
    {86, 239, 5}, {88, 244, 10}, {90, 254, 11}, {92, 265, 9}, {94, 274, 6}, {96, 280, 12},
    {98, 292, 5}, {100, 297, 12}, {102, 309, 10}, {104, 319, 10}, {106, 329, 6}, {108, 335, 12},
    {110, 347, 11}, {112, 358, 11}, {114, 369, 8}, {116, 377, 9}, {118, 386, 6}, {120, 392, 15},
    {122, 407, 3}, {124, 410, 8}, {126, 418, 11}, {128, 429, 9},
};

} // namespace brc::detail
