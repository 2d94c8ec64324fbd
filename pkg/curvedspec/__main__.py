from curvedspec.main import main

raise SystemExit(main())
