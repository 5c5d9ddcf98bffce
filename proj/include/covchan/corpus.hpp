#pragma once

#include <string>
#include <vector>

#include "covchan/infotheory.hpp"
#include "covchan/lts.hpp"

namespace covchan {

// Built-in example systems and channels used throughout the test suite
// and exposed through the `corpus` CLI command. The ack models take the
// upstream loss probability as a parameter.
std::vector<std::string> corpus_model_names();
std::vector<std::string> corpus_channel_names();

bool is_corpus_model(const std::string& name);
bool is_corpus_channel(const std::string& name);

TransitionSystem corpus_model(const std::string& name,
                              const Rational& loss = Rational(1, 10));
Dmc corpus_channel(const std::string& name);

// One-line description per entry, for the CLI listing.
std::string corpus_description(const std::string& name);

}  // namespace covchan
