import hypothesis
import numpy as np

np.seterr(all="warn")

# te same przykłady przy każdym uruchomieniu
hypothesis.settings.register_profile("default", deadline=None, derandomize=True, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, derandomize=True, max_examples=5)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile("default")
