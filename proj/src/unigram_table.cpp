#include "contrast/realize.hpp"

namespace contrast::realize {

namespace {

// Bundled token frequencies for the default scorer. Counts are from an
// informal newswire-plus-captions tally; coverage targets caption-style
// vocabulary, everything else pays the unknown-token penalty.
constexpr UnigramEntry kUnigramTable[] = {
    {"a", 23000},     {"about", 1900},  {"adults", 85},    {"after", 800},
    {"again", 300},   {"against", 200}, {"alice", 120},    {"all", 3900},
    {"also", 900},    {"an", 3700},     {"and", 28000},    {"are", 4800},
    {"as", 5700},     {"asked", 150},   {"at", 5300},      {"ate", 90},
    {"bad", 330},     {"barking", 30},  {"be", 6500},      {"because", 400},
    {"been", 2600},   {"beer", 95},     {"before", 500},   {"being", 1900},
    {"between", 300}, {"big", 520},     {"bike", 90},      {"blowing", 45},
    {"blown", 40},    {"board", 160},   {"bob", 110},      {"both", 250},
    {"bought", 140},  {"boy", 700},     {"bubbles", 35},   {"but", 4200},
    {"buying", 75},   {"by", 5100},     {"came", 400},     {"can", 2700},
    {"car", 520},     {"carried", 160}, {"carries", 55},   {"carry", 300},
    {"cats", 95},     {"come", 350},    {"could", 1200},   {"day", 400},
    {"develops", 60}, {"developed", 150}, {"did", 700},    {"didn't", 900},
    {"do", 3100},     {"dog", 300},     {"don't", 1600},   {"down", 600},
    {"drill", 60},    {"drilled", 22},  {"drills", 18},    {"driven", 70},
    {"driving", 160}, {"due", 260},     {"during", 300},   {"each", 1200},
    {"eaten", 60},    {"enough", 150},  {"exit", 80},      {"few", 200},
    {"find", 400},    {"first", 900},   {"five", 380},     {"flowers", 130},
    {"for", 8000},    {"from", 4300},   {"game", 330},     {"girl", 650},
    {"girls", 160},   {"go", 500},      {"going", 250},    {"great", 300},
    {"grown", 70},    {"guards", 60},   {"guitar", 70},    {"had", 4400},
    {"has", 1600},    {"hat", 120},     {"have", 4200},    {"he", 5400},
    {"heard", 300},   {"her", 2900},    {"him", 1400},     {"his", 5500},
    {"hole", 105},    {"house", 200},   {"how", 1300},     {"if", 2200},
    {"in", 21000},    {"into", 1500},   {"is", 10000},     {"isn't", 400},
    {"it", 10000},    {"its", 1100},    {"just", 700},     {"large", 420},
    {"last", 300},    {"like", 900},    {"long", 500},     {"look", 420},
    {"looked", 380},  {"looks", 180},   {"lost", 300},     {"lounging", 12},
    {"made", 700},    {"make", 600},    {"making", 240},   {"man", 1200},
    {"many", 900},    {"may", 1800},    {"me", 1100},      {"might", 600},
    {"mop", 30},      {"mopping", 14},  {"more", 1700},    {"most", 500},
    {"mountain", 140}, {"much", 400},   {"music", 380},    {"my", 1300},
    {"never", 350},   {"new", 1000},    {"newspaper", 110}, {"no", 2200},
    {"not", 4500},    {"now", 800},     {"of", 36000},     {"off", 300},
    {"often", 200},   {"old", 400},     {"on", 6100},      {"one", 3300},
    {"only", 1100},   {"or", 3700},     {"other", 1000},   {"our", 700},
    {"out", 2300},    {"outside", 240}, {"over", 900},     {"own", 250},
    {"part", 400},    {"people", 900},  {"performed", 75}, {"performing", 55},
    {"person", 300},  {"piano", 90},    {"pick", 120},     {"picked", 110},
    {"pink", 60},     {"play", 420},    {"played", 210},   {"playing", 260},
    {"pool", 130},    {"pothole", 8},   {"put", 400},      {"read", 480},
    {"reading", 170}, {"ribbon", 28},   {"ridden", 20},    {"riding", 95},
    {"right", 400},   {"road", 480},    {"rock", 200},     {"said", 2900},
    {"saw", 500},     {"scooter", 22},  {"see", 900},      {"seen", 420},
    {"she", 2400},    {"sheep", 85},    {"should", 500},   {"show", 150},
    {"since", 250},   {"small", 250},   {"snowballs", 25}, {"so", 2000},
    {"soccer", 75},   {"some", 1300},   {"sports", 150},   {"spun", 18},
    {"spins", 15},    {"stand", 1200},  {"standing", 100}, {"stick", 95},
    {"still", 400},   {"take", 350},    {"tend", 55},      {"tended", 45},
    {"than", 1400},   {"that", 4700},   {"the", 69000},
    {"their", 2600},  {"them", 1800},   {"then", 1500},    {"there", 2800},
    {"these", 900},   {"they", 3300},   {"this", 4600},    {"those", 300},
    {"three", 300},   {"through", 500}, {"time", 1300},    {"to", 26000},
    {"together", 150}, {"told", 350},   {"top", 180},      {"two", 1500},
    {"under", 250},   {"up", 2500},     {"us", 500},       {"use", 1200},
    {"used", 350},    {"very", 600},    {"was", 9800},     {"way", 500},
    {"we", 3500},     {"wearing", 85},  {"weather", 230},  {"well", 600},
    {"were", 3200},   {"what", 2400},   {"when", 2600},    {"where", 500},
    {"which", 3600},  {"while", 350},   {"who", 5200},     {"will", 3900},
    {"winter", 190},  {"with", 7000},   {"without", 300},  {"woman", 800},
    {"won't", 520},   {"world", 300},   {"would", 2100},   {"year", 350},
    {"years", 400},   {"your", 900},
};

}  // namespace

std::span<const UnigramEntry> unigram_table() {
  return {kUnigramTable, std::size(kUnigramTable)};
}

}  // namespace contrast::realize
