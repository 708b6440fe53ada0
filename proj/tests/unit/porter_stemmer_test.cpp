#include <gtest/gtest.h>

#include <utility>

#include "bailbench/metrics/porter_stemmer.hpp"

namespace bailbench {
namespace {

// Pairs from the classic reference vocabulary.
const std::pair<const char*, const char*> kVocabulary[] = {
    {"caresses", "caress"},     {"ponies", "poni"},         {"ties", "ti"},
    {"caress", "caress"},       {"cats", "cat"},            {"feed", "feed"},
    {"agreed", "agre"},         {"plastered", "plaster"},   {"bled", "bled"},
    {"motoring", "motor"},      {"sing", "sing"},           {"conflated", "conflat"},
    {"troubled", "troubl"},     {"sized", "size"},          {"hopping", "hop"},
    {"tanned", "tan"},          {"falling", "fall"},        {"hissing", "hiss"},
    {"fizzed", "fizz"},         {"failing", "fail"},        {"filing", "file"},
    {"happy", "happi"},         {"sky", "sky"},             {"relational", "relat"},
    {"conditional", "condit"},  {"rational", "ration"},     {"valenci", "valenc"},
    {"hesitanci", "hesit"},     {"digitizer", "digit"},     {"conformabli", "conform"},
    {"radicalli", "radic"},     {"differentli", "differ"},  {"vileli", "vile"},
    {"analogousli", "analog"},  {"vietnamization", "vietnam"}, {"predication", "predic"},
    {"operator", "oper"},       {"feudalism", "feudal"},    {"decisiveness", "decis"},
    {"hopefulness", "hope"},    {"callousness", "callous"}, {"formaliti", "formal"},
    {"sensitiviti", "sensit"},  {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
    {"formative", "form"},      {"formalize", "formal"},    {"electriciti", "electr"},
    {"electrical", "electr"},   {"hopeful", "hope"},        {"goodness", "good"},
    {"revival", "reviv"},       {"allowance", "allow"},     {"inference", "infer"},
    {"airliner", "airlin"},     {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
    {"defensible", "defens"},   {"irritant", "irrit"},      {"replacement", "replac"},
    {"adjustment", "adjust"},   {"dependent", "depend"},    {"adoption", "adopt"},
    {"homologou", "homolog"},   {"communism", "commun"},    {"activate", "activ"},
    {"angulariti", "angular"},  {"homologous", "homolog"},  {"effective", "effect"},
    {"bowdlerize", "bowdler"},  {"probate", "probat"},      {"rate", "rate"},
    {"cease", "ceas"},          {"controll", "control"},    {"roll", "roll"},
    {"generalizations", "gener"}, {"oscillators", "oscil"}, {"custodial", "custodi"},
    {"granted", "grant"},       {"witnesses", "wit"},
};

TEST(PorterStemmer, ReferenceVocabulary) {
  for (const auto& [word, stem] : kVocabulary) EXPECT_EQ(porter_stem(word), stem) << word;
}

TEST(PorterStemmer, ShortAndNonAlphabeticWordsUnchanged) {
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem("as"), "as");
  EXPECT_EQ(porter_stem("41a"), "41a");
  EXPECT_EQ(porter_stem("rs."), "rs.");
  EXPECT_EQ(porter_stem(""), "");
}

TEST(PorterStemmer, NeverGrowsWhenReapplied) {
  for (const auto& [word, stem] : kVocabulary) {
    const auto once = porter_stem(word);
    EXPECT_LE(porter_stem(once).size(), once.size()) << word;
  }
}

}  // namespace
}  // namespace bailbench
