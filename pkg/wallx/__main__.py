from wallx.cli import main

raise SystemExit(main())
