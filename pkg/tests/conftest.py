from hypothesis import settings

# Timing varies between the compiled and NumPy kernel backends; per-example
# deadlines add noise without catching anything here.
settings.register_profile("infoagree", deadline=None, max_examples=100)
settings.load_profile("infoagree")
