#include "covchan/interference.hpp"

namespace covchan {

InterferenceVerdict snni(const TransitionSystem& ts, int source, int sink) {
  if (source == sink) throw Error("interference requires two distinct processes");

  LangHandle full = LangHandle::from_lts(project_to_process(ts, sink));
  LangHandle without =
      LangHandle::from_lts(project_to_process(restrict_drop_process(ts, source), sink));

  InterferenceVerdict verdict;
  verdict.source = ts.processes[source];
  verdict.sink = ts.processes[sink];
  verdict.witness = LangHandle::distinguishing_word(full, without);
  verdict.interferes = verdict.witness.has_value();
  return verdict;
}

InterferenceVerdict snni(const TransitionSystem& ts, const std::string& source,
                         const std::string& sink) {
  return snni(ts, require_process(ts, source), require_process(ts, sink));
}

}  // namespace covchan
