#pragma once

namespace tfs {

// Entry point behind the tfscale binary.  Exit codes:
//   0  affirmative outcome (tight / strictly scalable / verification passed /
//      violation found / interior sample produced / export or emit done)
//   1  negative outcome of a well-posed question
//   2  borderline or inconclusive (tolerance-band verdicts, iteration caps)
//   3  usage or input errors
int cli_main(int argc, char** argv);

}  // namespace tfs
