#ifndef PLSTREAM_PIPELINE_HPP
#define PLSTREAM_PIPELINE_HPP

#include <functional>

#include "plstream/config.hpp"
#include "plstream/types.hpp"

namespace pls {

/// Executes the full operator chain: source -> preprocess/batch -> N workers
/// (train + label) -> sink. Blocks until the stream is exhausted or a stop is
/// requested. `tap`, when set, sees every labelled tuple on the sink thread.
RunResult run_pipeline(const RunConfig& config,
                       const std::function<void(const LabelledTuple&)>& tap = {});

/// Cooperative shutdown, safe to call from a signal handler.
void request_stop();
void reset_stop();

} // namespace pls

#endif
